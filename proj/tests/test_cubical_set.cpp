#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numeric>
#include <set>

#include "cubical/cubical_set.hpp"

using namespace cubical;

namespace {

// Independent gluing oracle for boundaries: the coequalizer of the face
// overlaps, built from disjoint copies of the (n-1)-cube identified along
// (n-2)-cube overlaps, together with its induced map into the n-cube.
struct GluedBoundary {
  std::vector<std::size_t> counts;                                               // classes per dim
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> cls;   // (comp, map) -> class
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rep;             // class -> (comp, map)
};

GluedBoundary glue_boundary(const Theory& t, int n, int D) {
  GluedBoundary g;
  std::vector<std::vector<CubeMap>> homs(static_cast<std::size_t>(D) + 1);
  std::vector<std::unordered_map<CubeMap, std::size_t, CubeMapHash>> idx(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    homs[static_cast<std::size_t>(d)] = enumerate_hom(t, d, n - 1);
    for (std::size_t i = 0; i < homs[static_cast<std::size_t>(d)].size(); ++i)
      idx[static_cast<std::size_t>(d)].emplace(homs[static_cast<std::size_t>(d)][i], i);
  }
  const std::size_t comps = 2u * static_cast<std::size_t>(n);
  auto comp_of = [](int i, int eps) { return 2u * static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(eps); };

  g.cls.resize(static_cast<std::size_t>(D) + 1);
  g.rep.resize(static_cast<std::size_t>(D) + 1);
  g.counts.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    const std::size_t per = homs[static_cast<std::size_t>(d)].size();
    std::vector<std::size_t> uf(comps * per);
    std::iota(uf.begin(), uf.end(), 0u);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (uf[a] != a) a = uf[a] = uf[uf[a]];
      return a;
    };
    // Identify the (j, ej) component at face_{i,ei} . h with the (i, ei)
    // component at face_{j-1,ej} . h, over all maps h into the corner cube.
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int ei = 0; ei <= 1; ++ei)
          for (int ej = 0; ej <= 1; ++ej)
            for (const CubeMap& h : enumerate_hom(t, d, n - 2)) {
              const std::size_t a =
                  comp_of(j, ej) * per + idx[static_cast<std::size_t>(d)].at(compose(face_map(n - 1, i, ei), h));
              const std::size_t b =
                  comp_of(i, ei) * per + idx[static_cast<std::size_t>(d)].at(compose(face_map(n - 1, j - 1, ej), h));
              uf[find(a)] = find(b);
            }
    std::map<std::size_t, std::size_t> roots;
    for (std::size_t c = 0; c < comps; ++c)
      for (std::size_t m = 0; m < per; ++m) {
        const std::size_t r = find(c * per + m);
        auto [it, fresh] = roots.emplace(r, g.rep[static_cast<std::size_t>(d)].size());
        if (fresh) g.rep[static_cast<std::size_t>(d)].emplace_back(c, m);
        g.cls[static_cast<std::size_t>(d)].emplace(std::make_pair(c, m), it->second);
      }
    g.counts[static_cast<std::size_t>(d)] = g.rep[static_cast<std::size_t>(d)].size();
  }
  return g;
}

}  // namespace

TEST_CASE("representable cube counts") {
  Representable r1(Theory::poset(), 1, 2);
  CHECK(r1.set()->size(0) == 2);
  CHECK(r1.set()->size(1) == 3);
  CHECK(r1.set()->size(2) == 6);
  Representable r2(Theory::none(), 1, 1);
  CHECK(r2.set()->size(0) == 2);
  CHECK(r2.set()->size(1) == 3);
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory::poset()}) {
    CSet pt = representable(t, 0, 2);
    for (int d = 0; d <= 2; ++d) CHECK(pt->size(d) == 1);
  }
}

TEST_CASE("representables are functorial") {
  CHECK(is_functorial(representable(Theory::none(), 1, 2)));
  CHECK(is_functorial(representable(Theory{Symbol::meet}, 2, 2)));
  CHECK(is_functorial(representable(Theory({Symbol::meet, Symbol::sigma}), 2, 2)));
  CHECK(is_functorial(representable(Theory::poset(), 1, 3), 2, 400));
}

TEST_CASE("actions reject foreign maps") {
  CSet X = representable(Theory{Symbol::meet}, 1, 2);
  CHECK_THROWS_AS(X->action(1, 0, connection_map(1, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(X->action(1, 0, face_map(2, 1, 0)), std::invalid_argument);
}

TEST_CASE("boundary subcomplexes") {
  Representable R(Theory::none(), 2, 2);
  Subcomplex b = boundary(R);
  CHECK(b.is_closed());
  // non-degenerate cubes by dimension: 4 vertices, 4 edges, nothing above
  auto view = b.as_cubical_set();
  std::vector<std::size_t> nondeg(3, 0);
  for (int d = 0; d <= 2; ++d)
    for (std::size_t i = 0; i < view.set->size(d); ++i)
      if (!is_degenerate_cube(view.set, d, i)) ++nondeg[static_cast<std::size_t>(d)];
  CHECK(nondeg == std::vector<std::size_t>{4, 4, 0});
  CHECK(is_functorial(view.set));
  CHECK(is_natural(view.inclusion));
}

TEST_CASE("open boxes omit exactly the missing face") {
  Representable R(Theory::none(), 2, 2);
  Subcomplex box = open_box(R, 1, 0);
  CHECK(box.is_closed());
  CHECK(box.contains(1, R.index(face_map(2, 1, 1))));
  CHECK(box.contains(1, R.index(face_map(2, 2, 0))));
  CHECK(box.contains(1, R.index(face_map(2, 2, 1))));
  CHECK_FALSE(box.contains(1, R.index(face_map(2, 1, 0))));
}

TEST_CASE("boundary agrees with the coequalizer gluing") {
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory::poset()})
    for (int n = 2; n <= 3; ++n) {
      const int D = 3;
      Representable R(t, n, D);
      Subcomplex b = boundary(R);
      GluedBoundary g = glue_boundary(t, n, D);
      for (int d = 0; d <= D; ++d) CHECK(g.counts[static_cast<std::size_t>(d)] == b.count(d));
      // induced map into the representable: constant on classes, injective
      // across classes, image exactly the boundary
      for (int d = 0; d <= D; ++d) {
        auto homs = enumerate_hom(t, d, n - 1);
        std::map<std::size_t, std::size_t> image;
        for (const auto& [key, c] : g.cls[static_cast<std::size_t>(d)]) {
          const auto [comp, m] = key;
          const int fi = static_cast<int>(comp / 2) + 1;
          const int fe = static_cast<int>(comp % 2);
          const std::size_t target = R.index(compose(face_map(n, fi, fe), homs[m]));
          auto [it, fresh] = image.emplace(c, target);
          if (!fresh) CHECK(it->second == target);
          CHECK(b.contains(d, target));
        }
        CHECK(image.size() == b.count(d));
        std::set<std::size_t> distinct;
        for (const auto& [c, i] : image) distinct.insert(i);
        CHECK(distinct.size() == image.size());
      }
    }
}

TEST_CASE("generated subcomplexes") {
  Representable R(Theory{Symbol::meet}, 2, 2);
  std::vector<std::pair<int, std::size_t>> all;
  for (int d = 0; d <= 2; ++d)
    for (std::size_t i = 0; i < R.set()->size(d); ++i) all.emplace_back(d, i);
  Subcomplex whole = subcomplex_generated(R.set(), all);
  for (int d = 0; d <= 2; ++d) CHECK(whole.count(d) == R.set()->size(d));

  // a vertex generates its degeneracy orbit: one cube per dimension
  Subcomplex v = subcomplex_generated(R.set(), {{0, 0}});
  for (int d = 0; d <= 2; ++d) CHECK(v.count(d) == 1);

  // one edge of the square: two endpoints
  Subcomplex e = subcomplex_generated(R.set(), {{1, R.index(face_map(2, 1, 0))}});
  CHECK(e.count(0) == 2);
  CHECK(e.is_closed());

  CHECK_THROWS_AS(subcomplex_generated(R.set(), {{0, 99}}), std::invalid_argument);
}

TEST_CASE("cube degeneracy and EZ factorization in a cubical set") {
  Representable R(Theory{Symbol::meet}, 1, 2);
  const std::size_t gamma = R.index(connection_map(1, 1, 1));
  CHECK(is_degenerate_cube(R.set(), 2, gamma));
  auto ez = ez_cube_factor(R.set(), 2, gamma);
  CHECK(ez.seed_dim == 1);
  CHECK(R.cube(1, ez.seed) == CubeMap::identity(1));
  CHECK(ez.degeneracy == connection_map(1, 1, 1));
  for (std::size_t i = 0; i < R.set()->size(0); ++i) CHECK_FALSE(is_degenerate_cube(R.set(), 0, i));

  // uniqueness against exhaustive search over (seed, active member) pairs
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::join})}) {
    Representable X(t, 2, 2);
    for (int d = 0; d <= 2; ++d)
      for (std::size_t i = 0; i < X.set()->size(d); ++i) {
        auto f = ez_cube_factor(X.set(), d, i);
        CHECK_FALSE(is_degenerate_cube(X.set(), f.seed_dim, f.seed));
        CHECK(X.set()->action(f.seed_dim, f.seed, f.degeneracy) == i);
        int matches = 0;
        for (int p = 0; p <= d; ++p)
          for (const CubeMap& mu : active_maps(t, d, p))
            for (std::size_t y = 0; y < X.set()->size(p); ++y)
              if (!is_degenerate_cube(X.set(), p, y) && X.set()->action(p, y, mu) == i) ++matches;
        CHECK(matches == 1);
      }
  }
}

TEST_CASE("no degenerate cube has exactly one face equal to a non-degenerate cube") {
  for (const Theory& t : {Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::join})})
    for (int n = 1; n <= 2; ++n) {
      CSet X = representable(t, n, 3);
      for (int d = 1; d <= 3; ++d)
        for (std::size_t i = 0; i < X->size(d); ++i) {
          if (!is_degenerate_cube(X, d, i)) continue;
          std::map<std::size_t, int> counts;
          for (int fi = 1; fi <= d; ++fi)
            for (int fe = 0; fe <= 1; ++fe) counts[X->action(d, i, face_map(d, fi, fe))]++;
          for (const auto& [y, c] : counts)
            if (!is_degenerate_cube(X, d - 1, y)) CHECK(c != 1);
        }
    }
}

TEST_CASE("cartesian products") {
  const Theory t{Symbol::meet};
  CSet I = representable(t, 1, 2);
  CSet pt = representable(t, 0, 2);
  auto p = cartesian_product(I, I);
  CHECK(p.set->size(0) == 4);
  CHECK(p.set->size(1) == 9);
  CHECK(is_functorial(p.set));
  CHECK(is_natural(p.proj_x));
  CHECK(is_natural(p.proj_y));

  // X x point is X via the first projection
  auto unit = cartesian_product(I, pt);
  CHECK(unit.proj_x.bijective());
  CHECK_THROWS_AS(cartesian_product(I, representable(t, 1, 1)), std::invalid_argument);
}

TEST_CASE("geometric product of representables is the representable of the sum") {
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::sigma}),
                          Theory::poset()})
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; m + n <= 3; ++n) {
        const int D = 3;
        Representable RM(t, m, D), RN(t, n, D), RS(t, m + n, D);
        GeometricProduct g(RM.set(), RN.set());
        // canonical comparison: the class of (id_m, id_n, phi) maps to phi
        CSMap iso{g.set(), RS.set(), {}};
        iso.level.resize(static_cast<std::size_t>(D) + 1);
        for (int d = 0; d <= D; ++d) {
          REQUIRE(g.set()->size(d) == RS.set()->size(d));
          iso.level[static_cast<std::size_t>(d)].resize(g.set()->size(d));
          for (const CubeMap& phi : enumerate_hom(t, d, m + n))
            iso.level[static_cast<std::size_t>(d)][g.cell_index(0, 0, phi)] = RS.index(phi);
        }
        CHECK(iso.bijective());
        CHECK(is_natural(iso, 2));
      }
}

TEST_CASE("geometric product with the unit cube") {
  const Theory t{Symbol::meet};
  Representable R(t, 2, 3);
  Subcomplex b = boundary(R);
  auto bv = b.as_cubical_set();
  CSet pt = representable(t, 0, 3);
  GeometricProduct g(bv.set, pt);
  CSMap iso{g.set(), bv.set, {}};
  iso.level.resize(4);
  for (int d = 0; d <= 3; ++d) {
    REQUIRE(g.set()->size(d) == bv.set->size(d));
    iso.level[static_cast<std::size_t>(d)].resize(g.set()->size(d));
    for (std::size_t i = 0; i < bv.set->size(d); ++i)
      iso.level[static_cast<std::size_t>(d)][g.pairing(d, i, 0, 0)] = i;
  }
  CHECK(iso.bijective());
  CHECK(is_natural(iso));
}

TEST_CASE("geometric product of the square boundary with an interval") {
  // cubes of d(box^2) (x) box^1 are the maps into box^3 factoring through
  // one of the four side faces carried by the first two coordinates
  const Theory t{Symbol::meet};
  Representable R2(t, 2, 3), R3(t, 3, 3);
  Subcomplex b = boundary(R2);
  auto bv = b.as_cubical_set();
  GeometricProduct g(bv.set, representable(t, 1, 3));
  for (int d = 0; d <= 3; ++d) {
    std::size_t expect = 0;
    for (std::size_t i = 0; i < R3.set()->size(d); ++i) {
      const auto fixed = fixed_coordinates(R3.cube(d, i));
      bool side = false;
      for (const auto& [fi, fe] : fixed)
        if (fi <= 2) side = true;
      if (side) ++expect;
    }
    CHECK(g.set()->size(d) == expect);
  }
  CHECK(is_functorial(g.set(), 2, 100));
}

TEST_CASE("geometric product counts match the cartesian product over the poset theory") {
  CSet I = representable(Theory::poset(), 1, 3);
  GeometricProduct g(I, I);
  auto c = cartesian_product(I, I);
  for (int d = 0; d <= 3; ++d) CHECK(g.set()->size(d) == c.set->size(d));
}
