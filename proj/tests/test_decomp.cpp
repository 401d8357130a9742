#include <catch2/catch_amalgamated.hpp>

#include "cubical/decomp.hpp"
#include "cubical/hom.hpp"

using namespace cubical;

namespace {

const std::vector<Theory> n_suite_theories = {
    Theory{Symbol::meet},
    Theory({Symbol::meet, Symbol::sigma}),
    Theory({Symbol::meet, Symbol::sigma, Symbol::delta}),
    Theory::poset(),
    Theory({Symbol::meet, Symbol::join, Symbol::rho}),
};

}  // namespace

TEST_CASE("long diagonal duplicates the tuple") {
  CHECK(long_diagonal(0) == CubeMap::identity(0));
  CHECK(long_diagonal(1) == CubeMap(1, 2, {0b00, 0b11}));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (const CubeMap& phi : enumerate_hom(Theory::poset(), m, n))
        CHECK(compose(long_diagonal(n), phi) == compose(tensor(phi, phi), long_diagonal(m)));
}

TEST_CASE("deletions and the retraction identity") {
  CHECK(front_deletion(0, 2) == CubeMap::identity(2));
  CHECK(last_deletion(2, 0) == CubeMap::identity(2));
  CHECK(front_deletion(1, 1) == projection_map(1, 1));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n + m <= 3; ++n) {
      const CubeMap r = tensor(last_deletion(m, n), front_deletion(m, n));
      CHECK(compose(r, long_diagonal(m + n)) == CubeMap::identity(m + n));
    }
  // both deletions are projection composites, so they lie in every theory
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}}) {
    CHECK(is_member(t, front_deletion(2, 1)));
    CHECK(is_member(t, last_deletion(1, 2)));
  }
}

TEST_CASE("standard decomposition examples") {
  // N_0(id_1) is the positive connection
  CHECK(standard_decomposition(CubeMap::identity(1), 0) == connection_map(1, 1, 1));
  // N_0(delta_1) is (a, b) -> (a, a and b)
  CHECK(standard_decomposition(diagonal_map(2, 1), 0) == CubeMap(2, 2, {0b00, 0b00, 0b10, 0b11}));
  // N_0(rho_1) is (a, b) -> (1 - a) and b
  CHECK(standard_decomposition(reversal_map(1, 1), 0) == CubeMap(2, 1, {0, 1, 0, 0}));
  CHECK_THROWS_AS(standard_decomposition(point_map(1), 0), std::invalid_argument);
}

TEST_CASE("explicit table agrees with the defining composite") {
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : enumerate_hom(t, m, n))
            for (Flavor fl : {Flavor::meet, Flavor::join})
              CHECK(standard_decomposition(phi, k, fl) == standard_decomposition_via_composite(phi, k, fl));
}

TEST_CASE("N_{j+k}(phi) = N_j(phi) (x) id_k and activity is preserved") {
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (const CubeMap& phi : enumerate_hom(t, m, n)) {
          for (int j = 0; j <= 2; ++j)
            for (int k = 0; j + k <= 2; ++k)
              CHECK(standard_decomposition(phi, j + k) ==
                    tensor(standard_decomposition(phi, j), CubeMap::identity(k)));
          if (is_active(phi))
            for (int k = 0; k <= 2; ++k) CHECK(is_active(standard_decomposition(phi, k)));
        }
}

TEST_CASE("N identities for composites with generators") {
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : enumerate_hom(t, m, n)) {
            const CubeMap body = tensor(tensor(phi, CubeMap::identity(1)), CubeMap::identity(k));
            // (1) N_k(phi . sigma_i) = N_k(phi) . sigma_i
            for (int i = 1; i <= m + 1; ++i)
              CHECK(standard_decomposition(compose(phi, projection_map(m, i)), k) ==
                    compose(standard_decomposition(phi, k), projection_map(m + k + 1, i)));
            // (2) N_k(phi . gamma_{i,eps}) = N_k(phi) . gamma_{i,eps}
            for (int i = 1; i <= m; ++i)
              for (int eps = 0; eps <= 1; ++eps) {
                if (!(eps ? t.has(Symbol::meet) : t.has(Symbol::join))) continue;
                CHECK(standard_decomposition(compose(phi, connection_map(m, i, eps)), k) ==
                      compose(standard_decomposition(phi, k), connection_map(m + k + 1, i, eps)));
              }
            // (3) N_k(face_{i,eps} . phi) = face_{i,eps} . N_k(phi) for i <= n
            for (int i = 1; i <= n; ++i)
              for (int eps = 0; eps <= 1; ++eps)
                CHECK(standard_decomposition(compose(face_map(n + 1, i, eps), phi), k) ==
                      compose(face_map(n + 1 + k, i, eps), standard_decomposition(phi, k)));
            // (4) N_k(face_{n+1,0} . phi) = face_{n+1,0} . sigma_{n+1} . (phi (x) id_{1+k})
            CHECK(standard_decomposition(compose(face_map(n + 1, n + 1, 0), phi), k) ==
                  compose(face_map(n + 1 + k, n + 1, 0),
                          compose(projection_map(n + k, n + 1), body)));
            // (5) N_k(face_{n+1,1} . phi) = phi (x) id_{1+k}
            CHECK(standard_decomposition(compose(face_map(n + 1, n + 1, 1), phi), k) == body);
          }
}

TEST_CASE("face trichotomy of standard decomposition cubes") {
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : enumerate_hom(t, m, n)) {
            const CubeMap nk = standard_decomposition(phi, k);
            // faces at i <= m: exactly one of the three cases
            for (int i = 1; i <= m; ++i)
              for (int eps = 0; eps <= 1; ++eps) {
                const CubeMap face = compose(nk, face_map(m + 1 + k, i, eps));
                CHECK(face == standard_decomposition(compose(phi, face_map(m, i, eps)), k));
                const CubeMap pf = compose(phi, face_map(m, i, eps));
                const auto fixed = fixed_coordinates(pf);
                int cases = 0;
                if (!fixed.empty() &&
                    !(fixed.size() == 1 && fixed[0] == std::make_pair(n, 1)))
                  ++cases;  // (1) factors through a face on the left
                if (fixed == std::vector<std::pair<int, int>>{{n, 1}}) {
                  ++cases;  // (2) psi (x) id_{1+k} for active psi
                  auto aff = active_face_factor(pf);
                  CHECK(face == tensor(tensor(aff.active, CubeMap::identity(1)), CubeMap::identity(k)));
                }
                if (fixed.empty()) {
                  ++cases;  // (3) another standard decomposition cube
                  CHECK(face == standard_decomposition(pf, k));
                }
                CHECK(cases == 1);
              }
            // the two distinguished faces
            CHECK(compose(nk, face_map(m + 1 + k, m + 1, 0)) ==
                  compose(face_map(n + k, n, 0),
                          compose(projection_map(n + k - 1, n), tensor(phi, CubeMap::identity(k)))));
            CHECK(compose(nk, face_map(m + 1 + k, m + 1, 1)) == tensor(phi, CubeMap::identity(k)));
            // trailing faces shift down to N_{k-1}
            for (int p = 1; p <= k; ++p)
              for (int eps = 0; eps <= 1; ++eps)
                CHECK(compose(nk, face_map(m + 1 + k, m + 1 + p, eps)) ==
                      compose(face_map(n + k, n + p, eps), standard_decomposition(phi, k - 1)));
          }
}

TEST_CASE("right tensor and nested decompositions degenerate") {
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : enumerate_hom(t, m, n)) {
            CHECK(standard_decomposition(tensor(phi, CubeMap::identity(1)), k) ==
                  compose(tensor(tensor(phi, CubeMap::identity(1)), CubeMap::identity(k)),
                          connection_map(m + 1 + k, m + 1, 1)));
            CHECK(standard_decomposition(standard_decomposition(phi, 0), k) ==
                  compose(tensor(standard_decomposition(phi, 0), CubeMap::identity(k)),
                          connection_map(m + 1 + k, m + 1, 1)));
          }
}

TEST_CASE("critical edges") {
  CHECK(critical_edge(1, 1, 0) == CubeMap::identity(1));
  CHECK(critical_edge(1, 1, 1) == CubeMap::identity(1));
  CHECK(critical_edge(2, 1, 1) == CubeMap(1, 2, {0b00, 0b10}));
  CHECK(critical_edge(2, 1, 0) == CubeMap(1, 2, {0b01, 0b11}));
  CHECK_THROWS_AS(critical_edge(2, 3, 0), std::invalid_argument);
}

TEST_CASE("critical edge of N_k(phi) is degenerate for active poset maps") {
  for (const Theory& t : n_suite_theories) {
    if (!t.subset_of(Theory::poset())) continue;
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : active_maps(t, m, n)) {
            const CubeMap edge = compose(standard_decomposition(phi, k),
                                         critical_edge(m + 1 + k, m + 1, 1));
            CHECK(is_constant(edge));
            CHECK(edge(0) == 0u);
          }
  }
}

TEST_CASE("decomposition statistics") {
  // base dimension of face . sigma_1 is 1
  const CubeMap f = compose(face_map(2, 2, 1), projection_map(1, 1));
  CHECK(stats(f).base_dimension == 1);
  CHECK(stats(CubeMap::identity(3)).tail_length == 3);
  for (const Theory& t : n_suite_theories)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k)
          for (const CubeMap& phi : active_maps(t, m, n)) {
            const auto s = stats(standard_decomposition(phi, k));
            CHECK(s.tail_length == k);
            CHECK(s.base_dimension == n + k);
          }
}

TEST_CASE("sampled sweep at dimension three") {
  // deterministic sample of poset maps with a dimension-3 leg
  auto maps = enumerate_hom(Theory::poset(), 3, 2);
  for (std::size_t idx = 0; idx < maps.size(); idx += 37) {
    const CubeMap& phi = maps[idx];
    for (int k = 0; k <= 1; ++k) {
      CHECK(standard_decomposition(phi, k) == standard_decomposition_via_composite(phi, k));
      CHECK(standard_decomposition(phi, k) ==
            tensor(standard_decomposition(phi, 0), CubeMap::identity(k)));
      if (is_active(phi)) CHECK(stats(standard_decomposition(phi, k)).tail_length == k);
    }
  }
}
