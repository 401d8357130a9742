#pragma once

// Verification sweeps: each suite exercises one family of combinatorial
// facts over exhaustive small-instance enumerations, reporting failures with
// a minimal reproducer. Shared by the command-line `check` front end and the
// acceptance suite.

#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cubical/anodyne.hpp"
#include "cubical/cubical_set.hpp"
#include "cubical/decomp.hpp"
#include "cubical/kan.hpp"
#include "cubical/serialize.hpp"

namespace cubical {

struct SweepBounds {
  int max_dim = 3;
  int max_k = 2;
  int truncation = 3;
  std::optional<Theory> theory;  // restrict theory-parametric suites
};

struct SweepReport {
  std::string suite;
  std::string bounds;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

namespace sweeps {

class Recorder {
 public:
  Recorder(SweepReport& rep) : rep_(rep) {}
  void check(bool ok, const std::function<std::string()>& describe) {
    ++rep_.cases;
    if (!ok && rep_.failures.size() < 32) rep_.failures.push_back(describe());
    if (!ok) ++suppressed_;
  }
  void fail(const std::string& what) {
    ++rep_.cases;
    rep_.failures.push_back(what);
  }

 private:
  SweepReport& rep_;
  std::size_t suppressed_ = 0;
};

inline std::vector<Theory> theories_or(const SweepBounds& b, std::vector<Theory> defaults) {
  if (b.theory) return {*b.theory};
  return defaults;
}

inline std::string bounds_string(const SweepBounds& b) {
  std::ostringstream os;
  os << "max-dim=" << b.max_dim << " max-k=" << b.max_k << " D=" << b.truncation;
  if (b.theory) os << " theory=" << b.theory->name();
  return os.str();
}

// --- cube_theory -----------------------------------------------------------

inline SweepReport cubical_identities(const SweepBounds& b) {
  SweepReport rep{"cubical-identities", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::max(b.max_dim, 1);
  for (int n = 1; n <= N; ++n) {
    for (int i = 1; i <= n; ++i)
      for (int eps = 0; eps <= 1; ++eps)
        r.check(compose(projection_map(n - 1, i), face_map(n, i, eps)) == CubeMap::identity(n - 1),
                [&] { return "sigma/face identity fails at n=" + std::to_string(n); });
    for (int i = 1; i + 1 <= n; ++i)
      for (int eps = 0; eps <= 1; ++eps) {
        const CubeMap gamma = connection_map(n - 1, i, eps);
        const CubeMap rhs = compose(face_map(n - 1, i, 1 - eps), projection_map(n - 2, i));
        r.check(compose(gamma, face_map(n, i, eps)) == CubeMap::identity(n - 1) &&
                    compose(gamma, face_map(n, i + 1, eps)) == CubeMap::identity(n - 1) &&
                    compose(gamma, face_map(n, i, 1 - eps)) == rhs &&
                    compose(gamma, face_map(n, i + 1, 1 - eps)) == rhs,
                [&] {
                  return "connection/face identity fails at n=" + std::to_string(n) +
                         " i=" + std::to_string(i) + " eps=" + std::to_string(eps);
                });
      }
  }
  return rep;
}

inline SweepReport factorization(const SweepBounds& b) {
  SweepReport rep{"factorization", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 3);
  for (const Theory& t : theories_or(b, {Theory::none(), Theory{Symbol::meet},
                                         Theory({Symbol::meet, Symbol::join}),
                                         Theory({Symbol::meet, Symbol::sigma}), Theory::poset()}))
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= N; ++n) {
        // candidate factorizations: theory-active maps after face composites
        std::map<CubeMap, int> counts;
        for (int p = 0; p <= n; ++p) {
          auto lists = enumerate_face_lists(p, n);
          for (const CubeMap& psi : active_maps(t, m, p))
            for (const FaceList& kl : lists) counts[compose(faces_map(kl), psi)]++;
        }
        for (const CubeMap& f : enumerate_hom(t, m, n)) {
          auto aff = active_face_factor(f);
          const bool roundtrip = compose(faces_map(aff.kappa), aff.active) == f && is_active(aff.active);
          auto it = counts.find(f);
          const bool unique = it != counts.end() && it->second == 1;
          r.check(roundtrip && unique, [&] {
            return "factorization fails over " + t.name() + " for " + f.to_string();
          });
        }
      }
  return rep;
}

inline SweepReport hom_counts(const SweepBounds& b) {
  SweepReport rep{"hom-counts", bounds_string(b), 0, {}};
  Recorder r(rep);
  r.check(enumerate_hom(Theory::none(), 1, 1).size() == 3,
          [] { return std::string("minimal interval endomorphisms != 3"); });
  std::size_t monotone21 = 0;
  for (const CubeMap& f : detail::all_functions(2, 1))
    if (is_monotone(f)) ++monotone21;
  r.check(enumerate_hom(Theory::poset(), 2, 1).size() == monotone21 && monotone21 == 6,
          [] { return std::string("poset (2,1) count mismatch"); });
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      auto closure = detail::bfs_from_source(Theory::poset(), m, std::max(m, n) + 2)
                         ->by_codomain[static_cast<std::size_t>(n)];
      r.check(closure == enumerate_hom(Theory::poset(), m, n), [&] {
        return "poset closure disagrees with the monotone characterization at (" + std::to_string(m) +
               "," + std::to_string(n) + ")";
      });
      auto closure_full = detail::bfs_from_source(Theory::full(), m, std::max(m, n) + 2)
                              ->by_codomain[static_cast<std::size_t>(n)];
      r.check(closure_full == enumerate_hom(Theory::full(), m, n), [&] {
        return "full closure disagrees with the function characterization at (" + std::to_string(m) +
               "," + std::to_string(n) + ")";
      });
    }
  for (const Theory& t : {Theory::none(), Theory{Symbol::meet}, Theory::poset(), Theory::full()})
    r.check(enumerate_hom(t, 0, 2).size() == 4,
            [&] { return "vertex count fails over " + t.name(); });
  return rep;
}

inline SweepReport tensor_faithful(const SweepBounds& b) {
  SweepReport rep{"tensor-faithful", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 2);
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (int p = 0; p <= N; ++p)
        for (int q = 0; q <= N; ++q) {
          std::map<CubeMap, std::pair<CubeMap, CubeMap>> seen;
          for (const CubeMap& f : detail::all_functions(m, n))
            for (const CubeMap& g : detail::all_functions(p, q)) {
              auto [it, fresh] = seen.emplace(tensor(f, g), std::make_pair(f, g));
              r.check(fresh || (it->second.first == f && it->second.second == g), [&] {
                return "tensor collision at dims (" + std::to_string(m) + "," + std::to_string(n) +
                       "," + std::to_string(p) + "," + std::to_string(q) + ")";
              });
            }
        }
  return rep;
}

inline SweepReport face_pullback(const SweepBounds& b) {
  SweepReport rep{"face-pullback", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 3);
  for (int n = 2; n <= N; ++n)
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int ei = 0; ei <= 1; ++ei)
          for (int ej = 0; ej <= 1; ++ej) {
            r.check(compose(face_map(n, j, ej), face_map(n - 1, i, ei)) ==
                        compose(face_map(n, i, ei), face_map(n - 1, j - 1, ej)),
                    [&] { return "face interchange fails at n=" + std::to_string(n); });
            for (int m = 0; m <= 2; ++m)
              for (const CubeMap& f : detail::all_functions(m, n)) {
                const auto fixed = fixed_coordinates(f);
                auto has = [&fixed](int c, int e) {
                  return std::find(fixed.begin(), fixed.end(), std::make_pair(c, e)) != fixed.end();
                };
                bool through_corner = false;
                if (has(i, ei) && has(j, ej)) {
                  FaceList corner({{j, ej}, {i, ei}}, n);
                  for (const CubeMap& g : detail::all_functions(m, n - 2))
                    if (compose(faces_map(corner), g) == f) through_corner = true;
                }
                r.check((has(i, ei) && has(j, ej)) == through_corner,
                        [&] { return "pullback fails for " + f.to_string(); });
              }
          }
  return rep;
}

inline SweepReport ez_factor_sweep(const SweepBounds& b) {
  SweepReport rep{"ez-factor", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 2);
  for (const Theory& t :
       theories_or(b, {Theory::none(), Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::join})})) {
    if (!t.connections_only()) continue;
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= N; ++n)
        for (const CubeMap& f : enumerate_hom(t, m, n)) {
          auto ez = ez_factor(t, f);
          int matches = 0;
          for (int p = 0; p <= n; ++p)
            for (const FaceList& kl : enumerate_face_lists(p, n))
              for (const CubeMap& mu : active_maps(t, m, p))
                if (compose(faces_map(kl), mu) == f) ++matches;
          r.check(compose(faces_map(ez.kappa), ez.degeneracy) == f && is_member(t, ez.degeneracy) &&
                      matches == 1,
                  [&] { return "EZ factorization fails over " + t.name() + " for " + f.to_string(); });
        }
  }
  return rep;
}

inline SweepReport degen_one_face(const SweepBounds& b) {
  SweepReport rep{"degen-one-face", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 3);
  for (const Theory& t : theories_or(b, {Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::join})})) {
    if (!t.connections_only()) continue;
    for (int n = 0; n <= N; ++n) {
      CSet X = representable(t, n, N);
      for (int d = 1; d <= N; ++d)
        for (std::size_t i = 0; i < X->size(d); ++i) {
          if (!is_degenerate_cube(X, d, i)) continue;
          std::map<std::size_t, int> counts;
          for (int fi = 1; fi <= d; ++fi)
            for (int fe = 0; fe <= 1; ++fe) counts[X->action(d, i, face_map(d, fi, fe))]++;
          for (const auto& [y, c] : counts) {
            if (is_degenerate_cube(X, d - 1, y)) continue;
            r.check(c != 1, [&] {
              return "degenerate cube " + X->label(d, i) + " has exactly one face " + X->label(d - 1, y);
            });
          }
        }
    }
  }
  return rep;
}

// --- decomposition ----------------------------------------------------------

inline std::vector<Theory> n_suite_theories(const SweepBounds& b) {
  return theories_or(b, {Theory{Symbol::meet}, Theory({Symbol::meet, Symbol::sigma}),
                         Theory({Symbol::meet, Symbol::sigma, Symbol::delta}), Theory::poset(),
                         Theory({Symbol::meet, Symbol::join, Symbol::rho})});
}

template <typename Fn>
inline void for_each_n_case(const SweepBounds& b, Fn&& fn) {
  const int N = std::min(b.max_dim, 2);
  for (const Theory& t : n_suite_theories(b))
    for (int m = 0; m <= N; ++m)
      for (int n = 1; n <= N; ++n)
        for (int k = 0; k <= b.max_k; ++k)
          for (const CubeMap& phi : enumerate_hom(t, m, n)) fn(t, phi, k);
}

inline SweepReport n_identities(const SweepBounds& b) {
  SweepReport rep{"n-identities", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    const int m = phi.domain_dim(), n = phi.codomain_dim();
    auto describe = [&](const char* which) {
      return [&t, &phi, k, which] {
        return std::string("N-identity ") + which + " fails over " + t.name() + " for " +
               phi.to_string() + " k=" + std::to_string(k);
      };
    };
    const CubeMap body = tensor(tensor(phi, CubeMap::identity(1)), CubeMap::identity(k));
    r.check(standard_decomposition(phi, k) == standard_decomposition_via_composite(phi, k),
            describe("explicit-vs-composite"));
    for (int i = 1; i <= m + 1; ++i)
      r.check(standard_decomposition(compose(phi, projection_map(m, i)), k) ==
                  compose(standard_decomposition(phi, k), projection_map(m + k + 1, i)),
              describe("(1)"));
    for (int i = 1; i <= m; ++i)
      for (int eps = 0; eps <= 1; ++eps) {
        if (!(eps ? t.has(Symbol::meet) : t.has(Symbol::join))) continue;
        r.check(standard_decomposition(compose(phi, connection_map(m, i, eps)), k) ==
                    compose(standard_decomposition(phi, k), connection_map(m + k + 1, i, eps)),
                describe("(2)"));
      }
    for (int i = 1; i <= n; ++i)
      for (int eps = 0; eps <= 1; ++eps)
        r.check(standard_decomposition(compose(face_map(n + 1, i, eps), phi), k) ==
                    compose(face_map(n + 1 + k, i, eps), standard_decomposition(phi, k)),
                describe("(3)"));
    r.check(standard_decomposition(compose(face_map(n + 1, n + 1, 0), phi), k) ==
                compose(face_map(n + 1 + k, n + 1, 0), compose(projection_map(n + k, n + 1), body)),
            describe("(4)"));
    r.check(standard_decomposition(compose(face_map(n + 1, n + 1, 1), phi), k) == body, describe("(5)"));
  });
  return rep;
}

inline SweepReport n_faces(const SweepBounds& b) {
  SweepReport rep{"n-faces", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    const int m = phi.domain_dim(), n = phi.codomain_dim();
    const CubeMap nk = standard_decomposition(phi, k);
    auto describe = [&](const std::string& which) {
      return [&t, &phi, k, which] {
        return "N-face case " + which + " fails over " + t.name() + " for " + phi.to_string() +
               " k=" + std::to_string(k);
      };
    };
    for (int i = 1; i <= m; ++i)
      for (int eps = 0; eps <= 1; ++eps) {
        const CubeMap face = compose(nk, face_map(m + 1 + k, i, eps));
        const CubeMap pf = compose(phi, face_map(m, i, eps));
        r.check(face == standard_decomposition(pf, k), describe("low"));
        const auto fixed = fixed_coordinates(pf);
        int cases = 0;
        if (!fixed.empty() && !(fixed.size() == 1 && fixed[0] == std::make_pair(n, 1))) ++cases;
        if (fixed == std::vector<std::pair<int, int>>{{n, 1}}) {
          ++cases;
          auto aff = active_face_factor(pf);
          r.check(face == tensor(tensor(aff.active, CubeMap::identity(1)), CubeMap::identity(k)),
                  describe("tensor"));
        }
        if (fixed.empty()) {
          ++cases;
          r.check(face == standard_decomposition(pf, k), describe("nested"));
        }
        r.check(cases == 1, describe("trichotomy"));
      }
    r.check(compose(nk, face_map(m + 1 + k, m + 1, 0)) ==
                compose(face_map(n + k, n, 0),
                        compose(projection_map(n + k - 1, n), tensor(phi, CubeMap::identity(k)))),
            describe("(m+1,0)"));
    r.check(compose(nk, face_map(m + 1 + k, m + 1, 1)) == tensor(phi, CubeMap::identity(k)),
            describe("(m+1,1)"));
    for (int p = 1; p <= k; ++p)
      for (int eps = 0; eps <= 1; ++eps)
        r.check(compose(nk, face_map(m + 1 + k, m + 1 + p, eps)) ==
                    compose(face_map(n + k, n + p, eps), standard_decomposition(phi, k - 1)),
                describe("tail"));
  });
  return rep;
}

inline SweepReport n_active(const SweepBounds& b) {
  SweepReport rep{"n-active", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    if (!is_active(phi)) return;
    r.check(is_active(standard_decomposition(phi, k)), [&] {
      return "activity not preserved over " + t.name() + " for " + phi.to_string() +
             " k=" + std::to_string(k);
    });
  });
  return rep;
}

inline SweepReport n_tensor_tail(const SweepBounds& b) {
  SweepReport rep{"n-tensor-tail", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    for (int j = 0; j + k <= b.max_k; ++j)
      r.check(standard_decomposition(phi, j + k) ==
                  tensor(standard_decomposition(phi, j), CubeMap::identity(k)),
              [&] { return "N tensor splitting fails over " + t.name() + " for " + phi.to_string(); });
    if (is_active(phi)) {
      const auto s = stats(standard_decomposition(phi, k));
      r.check(s.tail_length == k && s.base_dimension == phi.codomain_dim() + k, [&] {
        return "decomposition statistics fail over " + t.name() + " for " + phi.to_string() +
               " k=" + std::to_string(k);
      });
    }
  });
  return rep;
}

inline SweepReport n_special(const SweepBounds& b) {
  SweepReport rep{"n-special", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    const int m = phi.domain_dim();
    r.check(standard_decomposition(tensor(phi, CubeMap::identity(1)), k) ==
                compose(tensor(tensor(phi, CubeMap::identity(1)), CubeMap::identity(k)),
                        connection_map(m + 1 + k, m + 1, 1)),
            [&] { return "right-tensor degeneracy fails over " + t.name() + " for " + phi.to_string(); });
    r.check(standard_decomposition(standard_decomposition(phi, 0), k) ==
                compose(tensor(standard_decomposition(phi, 0), CubeMap::identity(k)),
                        connection_map(m + 1 + k, m + 1, 1)),
            [&] { return "nested decomposition fails over " + t.name() + " for " + phi.to_string(); });
  });
  return rep;
}

inline SweepReport n_crit_edge(const SweepBounds& b) {
  SweepReport rep{"n-crit-edge", bounds_string(b), 0, {}};
  Recorder r(rep);
  for_each_n_case(b, [&](const Theory& t, const CubeMap& phi, int k) {
    if (!t.subset_of(Theory::poset()) || !is_active(phi)) return;
    const int m = phi.domain_dim();
    const CubeMap edge = compose(standard_decomposition(phi, k), critical_edge(m + 1 + k, m + 1, 1));
    r.check(is_constant(edge) && edge(0) == 0u, [&] {
      return "critical edge not degenerate over " + t.name() + " for " + phi.to_string() +
             " k=" + std::to_string(k);
    });
  });
  return rep;
}

inline SweepReport long_diagonal_sweep(const SweepBounds& b) {
  SweepReport rep{"long-diagonal", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int N = std::min(b.max_dim, 2);
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n)
      for (const CubeMap& phi : enumerate_hom(Theory::poset(), m, n))
        r.check(compose(long_diagonal(n), phi) == compose(tensor(phi, phi), long_diagonal(m)),
                [&] { return "long diagonal naturality fails for " + phi.to_string(); });
    for (int n = 0; m + n <= 2 * N - 1; ++n)
      r.check(compose(tensor(last_deletion(m, n), front_deletion(m, n)), long_diagonal(m + n)) ==
                  CubeMap::identity(m + n),
              [&] { return "deletion retraction fails at (" + std::to_string(m) + "," + std::to_string(n) + ")"; });
  }
  return rep;
}

// --- cubical sets -----------------------------------------------------------

inline SweepReport boundary_colim(const SweepBounds& b) {
  SweepReport rep{"boundary-colim", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int D = b.truncation;
  for (const Theory& t : theories_or(b, {Theory::none(), Theory{Symbol::meet}, Theory::poset()}))
    for (int n = 2; n <= std::min(b.max_dim, 3); ++n) {
      Representable R(t, n, D);
      Subcomplex bd = boundary(R);
      // glue disjoint faces along their pairwise overlaps
      for (int d = 0; d <= D; ++d) {
        auto homs = enumerate_hom(t, d, n - 1);
        const std::size_t per = homs.size();
        std::vector<std::size_t> uf(2 * static_cast<std::size_t>(n) * per);
        std::iota(uf.begin(), uf.end(), 0u);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
          while (uf[a] != a) a = uf[a] = uf[uf[a]];
          return a;
        };
        auto comp = [per](int i, int eps, std::size_t m) {
          return (2u * static_cast<std::size_t>(i - 1) + static_cast<std::size_t>(eps)) * per + m;
        };
        std::unordered_map<CubeMap, std::size_t, CubeMapHash> idx;
        for (std::size_t m = 0; m < per; ++m) idx.emplace(homs[m], m);
        for (int i = 1; i < n; ++i)
          for (int j = i + 1; j <= n; ++j)
            for (int ei = 0; ei <= 1; ++ei)
              for (int ej = 0; ej <= 1; ++ej)
                for (const CubeMap& h : enumerate_hom(t, d, n - 2)) {
                  const std::size_t a = comp(j, ej, idx.at(compose(face_map(n - 1, i, ei), h)));
                  const std::size_t bb = comp(i, ei, idx.at(compose(face_map(n - 1, j - 1, ej), h)));
                  uf[find(a)] = find(bb);
                }
                // classes must biject with the boundary cubes through the induced map
        std::map<std::size_t, std::size_t> cls_image;
        std::set<std::size_t> images;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i)
          for (int eps = 0; eps <= 1 && ok; ++eps)
            for (std::size_t m = 0; m < per && ok; ++m) {
              const std::size_t root = find(comp(i, eps, m));
              const std::size_t img = R.index(compose(face_map(n, i, eps), homs[m]));
              auto [it, fresh] = cls_image.emplace(root, img);
              if (!fresh && it->second != img) ok = false;
              images.insert(img);
              if (!bd.contains(d, img)) ok = false;
            }
        ok = ok && cls_image.size() == bd.count(d) && images.size() == cls_image.size();
        r.check(ok, [&] {
          return "coequalizer gluing disagrees with the boundary over " + t.name() + " at n=" +
                 std::to_string(n) + " dim " + std::to_string(d);
        });
      }
    }
  return rep;
}

inline SweepReport functoriality(const SweepBounds& b) {
  SweepReport rep{"functoriality", bounds_string(b), 0, {}};
  Recorder r(rep);
  const int D = std::min(b.truncation, 3);
  std::vector<std::pair<std::string, CSet>> sets;
  sets.emplace_back("rep(none,1)", representable(Theory::none(), 1, std::min(D, 2)));
  sets.emplace_back("rep(meet,2)", representable(Theory{Symbol::meet}, 2, std::min(D, 2)));
  sets.emplace_back("rep(poset,1)", representable(Theory::poset(), 1, D));
  Representable Rm(Theory{Symbol::meet}, 2, std::min(D, 2));
  sets.emplace_back("boundary(meet,2)", boundary(Rm).as_cubical_set().set);
  CSet I = representable(Theory{Symbol::meet}, 1, std::min(D, 2));
  auto cart = cartesian_product(I, I);
  sets.emplace_back("interval x interval", cart.set);
  GeometricProduct g(I, I);
  sets.emplace_back("interval (x) interval", g.set());
  for (const auto& [name, X] : sets) {
    std::string why;
    r.check(is_functorial(X, 2, 200, &why), [&] { return name + ": " + why; });
  }
  std::string why;
  r.check(is_natural(cart.proj_x, 2, &why) && is_natural(cart.proj_y, 2, &why),
          [&] { return "projection naturality: " + why; });
  return rep;
}

// --- comparison -------------------------------------------------------------

inline SweepReport kan_extension(const SweepBounds& b) {
  SweepReport rep{"kan-extension", bounds_string(b), 0, {}};
  Recorder r(rep);
  const Theory meet{Symbol::meet};
  const int D = b.truncation;
  for (const Theory& B : {Theory({Symbol::meet, Symbol::sigma}), Theory::poset()}) {
    for (int n = 0; n <= 2; ++n) {
      Representable RA(meet, n, D), RB(B, n, D);
      LeftExtension L(RA.set(), B);
      CSMap iso = left_extend_representable_iso(L, RA, RB);
      std::string why;
      r.check(iso.bijective(), [&] {
        return "extension of the " + std::to_string(n) + "-cube not isomorphic over " + B.name();
      });
      r.check(is_natural(iso, 2, &why), [&] { return "extension comparison unnatural: " + why; });
    }
    Representable R2(meet, 2, D);
    for (const CSet& X : {R2.set(), boundary(R2).as_cubical_set().set}) {
      LeftExtension L(X, B);
      r.check(L.unit().injective(), [&] { return "unit not injective over " + B.name(); });
    }
    // boundary and open-box inclusions are preserved
    Representable RA(meet, 2, D), RB(B, 2, D);
    LeftExtension Lrep(RA.set(), B);
    CSMap rep_iso = left_extend_representable_iso(Lrep, RA, RB);
    auto check_inclusion = [&](Subcomplex subA, Subcomplex subB, const char* what) {
      auto view = subA.as_cubical_set();
      LeftExtension Lsub(view.set, B);
      CSMap incl = left_extend_map(view.inclusion, Lsub, Lrep);
      bool ok = incl.injective();
      for (int d = 0; d <= D && ok; ++d) {
        std::set<std::size_t> image, expect;
        for (std::size_t i = 0; i < Lsub.set()->size(d); ++i) image.insert(rep_iso(d, incl(d, i)));
        for (std::size_t i = 0; i < RB.set()->size(d); ++i)
          if (subB.contains(d, i)) expect.insert(i);
        ok = image == expect;
      }
      r.check(ok, [&] { return std::string(what) + " inclusion not preserved over " + B.name(); });
    };
    check_inclusion(boundary(RA), boundary(RB), "boundary");
    check_inclusion(open_box(RA, 1, 0), open_box(RB, 1, 0), "open-box");
  }
  return rep;
}

inline SweepReport product_comparison(const SweepBounds& b) {
  SweepReport rep{"product-comparison", bounds_string(b), 0, {}};
  Recorder r(rep);
  const Theory meet{Symbol::meet};
  const int D = b.truncation;
  {
    CSet I = representable(Theory::poset(), 1, D);
    ProductComparison cmp = compare_products(I, I);
    std::string why;
    r.check(cmp.geo_to_cart.bijective(),
            [] { return std::string("poset interval comparison not bijective"); });
    r.check(is_natural(cmp.geo_to_cart, 2, &why), [&] { return "comparison unnatural: " + why; });
  }
  Representable R2(meet, 2, D);
  std::vector<std::pair<std::string, CSet>> instances = {
      {"point", representable(meet, 0, D)},
      {"interval", representable(meet, 1, D)},
      {"boundary", boundary(R2).as_cubical_set().set}};
  for (const auto& [nx, X] : instances)
    for (const auto& [ny, Y] : instances) {
      ExtendedComparison cmp = compare_products_extended(X, Y, Theory::poset());
      r.check(cmp.base.geo_to_cart.injective(),
              [&] { return nx + " (x) " + ny + ": comparison not injective"; });
      r.check(cmp.cart_to_extended.injective(),
              [&] { return nx + " x " + ny + ": extension comparison not injective"; });
      r.check(compose(cmp.cart_to_extended, cmp.base.geo_to_cart).level == cmp.unit.level,
              [&] { return nx + "," + ny + ": composite differs from the unit"; });
    }
  return rep;
}

inline SweepReport cartesian_image(const SweepBounds& b) {
  SweepReport rep{"cartesian-image", bounds_string(b), 0, {}};
  Recorder r(rep);
  const Theory meet{Symbol::meet};
  const int D = b.truncation;
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}})
    for (int k = 0; k <= D; ++k) {
      std::set<CubeMap> direct;
      for (const CubeMap& u : enumerate_hom(meet, k, m))
        for (const CubeMap& v : enumerate_hom(meet, k, n))
          direct.insert(compose(tensor(u, v), long_diagonal(k)));
      std::set<CubeMap> by_criterion;
      for (const CubeMap& phi : enumerate_hom(Theory::poset(), k, m + n))
        if (cartesian_image_member(phi, m, n, meet)) by_criterion.insert(phi);
      r.check(direct == by_criterion, [&] {
        return "cartesian image mismatch at split (" + std::to_string(m) + "," + std::to_string(n) +
               ") dim " + std::to_string(k);
      });
    }
  return rep;
}

// --- anodyne ----------------------------------------------------------------

inline SweepReport anodyne_unit(const SweepBounds& b) {
  SweepReport rep{"anodyne-unit", bounds_string(b), 0, {}};
  Recorder r(rep);
  const SubcomplexSpec unit{SubcomplexSpec::Kind::unit, -1}, full{SubcomplexSpec::Kind::full, -1};
  for (const Theory& B : {Theory({Symbol::meet, Symbol::sigma}), Theory::poset()})
    for (int n = 1; n <= 2; ++n) {
      AnodyneAmbient amb(Theory{Symbol::meet}, B, n, b.truncation);
      try {
        auto res = certify(amb, unit, full);
        auto v = verify(res.certificate);
        r.check(v.pass && res.certificate.all_inner, [&] {
          return "unit certificate fails over " + B.name() + " n=" + std::to_string(n) + ": " + v.detail;
        });
      } catch (const std::exception& e) {
        r.fail("unit certificate exception over " + B.name() + " n=" + std::to_string(n) + ": " + e.what());
      }
    }
  return rep;
}

inline SweepReport anodyne_cartesian(const SweepBounds& b) {
  SweepReport rep{"anodyne-cartesian", bounds_string(b), 0, {}};
  Recorder r(rep);
  const SubcomplexSpec unit{SubcomplexSpec::Kind::unit, -1}, full{SubcomplexSpec::Kind::full, -1};
  try {
    {
      AnodyneAmbient amb(Theory{Symbol::meet}, Theory::poset(), 2, b.truncation);
      const SubcomplexSpec cart{SubcomplexSpec::Kind::cartesian, 1};
      r.check(is_decomposition_closed(amb, amb.subcomplex(cart)),
              [] { return std::string("interval x interval image not decomposition-closed"); });
      auto lower = certify(amb, unit, cart);
      auto upper = certify(amb, cart, full);
      r.check(verify(lower.certificate).pass && lower.certificate.all_inner,
              [] { return std::string("lower cartesian certificate fails"); });
      r.check(verify(upper.certificate).pass && upper.certificate.all_inner,
              [] { return std::string("upper cartesian certificate fails"); });
    }
    if (b.truncation >= 3) {
      // interval x square, certified within the truncated range
      AnodyneAmbient amb(Theory{Symbol::meet}, Theory::poset(), 3, b.truncation);
      const SubcomplexSpec cart{SubcomplexSpec::Kind::cartesian, 1};
      r.check(is_decomposition_closed(amb, amb.subcomplex(cart)),
              [] { return std::string("interval x square image not decomposition-closed"); });
      auto lower = certify(amb, unit, cart);
      auto upper = certify(amb, cart, full);
      r.check(verify(lower.certificate).pass && lower.certificate.all_inner,
              [] { return std::string("lower interval-x-square certificate fails"); });
      r.check(verify(upper.certificate).pass && upper.certificate.all_inner,
              [] { return std::string("upper interval-x-square certificate fails"); });
    }
  } catch (const std::exception& e) {
    r.fail(std::string("cartesian certificate exception: ") + e.what());
  }
  return rep;
}

inline SweepReport certificate_mutations(const SweepBounds& b) {
  SweepReport rep{"certificate-mutations", bounds_string(b), 0, {}};
  Recorder r(rep);
  AnodyneAmbient amb(Theory{Symbol::meet}, Theory::poset(), 2, b.truncation);
  const json good = certificate_to_json(certify(amb, SubcomplexSpec{SubcomplexSpec::Kind::unit, -1},
                                                 SubcomplexSpec{SubcomplexSpec::Kind::full, -1})
                                            .certificate);
  if (!verify(certificate_from_json(good)).pass) {
    r.fail("baseline certificate does not verify");
    return rep;
  }
  auto rejected = [&](const json& j) {
    try {
      return !verify(certificate_from_json(j)).pass;
    } catch (const std::exception&) {
      return true;
    }
  };
  auto expect = [&](json j, const std::string& what) {
    r.check(rejected(j), [&what] { return "mutation accepted: " + what; });
  };
  expect([&] { json j = good; j["n"] = 1; return j; }(), "n");
  expect([&] { json j = good; j["truncation"] = b.truncation - 1; return j; }(), "truncation");
  expect([&] { json j = good; j["allInner"] = false; return j; }(), "allInner");
  expect([&] { json j = good; j["flavor"] = "join"; return j; }(), "flavor");
  expect([&] { json j = good; j["theoryA"] = json::array({"join"}); return j; }(), "theoryA");
  expect([&] { json j = good; j["theoryB"] = json::array({"meet"}); return j; }(), "theoryB");
  expect([&] { json j = good; j["source"] = json{{"kind", "full"}}; return j; }(), "source");
  expect([&] { json j = good; j["target"] = json{{"kind", "unit"}}; return j; }(), "target");
  for (std::size_t s = 0; s < good["steps"].size(); ++s) {
    for (const char* fld : {"i", "j", "k"})
      for (int delta : {-1, 1})
        expect([&] {
          json j = good;
          j["steps"][s][fld] = j["steps"][s][fld].get<int>() + delta;
          return j;
        }(), "step " + std::to_string(s) + " " + fld);
    expect([&] {
      json j = good;
      j["steps"][s]["inner"] = !j["steps"][s]["inner"].get<bool>();
      return j;
    }(), "step inner");
    expect([&] {
      json j = good;
      j["steps"][s]["missingFace"][0] = j["steps"][s]["missingFace"][0].get<int>() + 1;
      return j;
    }(), "missing face");
    expect([&] {
      json j = good;
      std::string e = j["steps"][s]["phi"]["table"][0].get<std::string>();
      if (e.empty()) return j;
      e[0] = e[0] == '0' ? '1' : '0';
      j["steps"][s]["phi"]["table"][0] = e;
      return j;
    }(), "phi bit");
    if (!good["steps"][s]["kappa"].empty())
      expect([&] {
        json j = good;
        j["steps"][s]["kappa"][0][1] = 1 - j["steps"][s]["kappa"][0][1].get<int>();
        return j;
      }(), "kappa side");
  }
  return rep;
}

}  // namespace sweeps

struct SuiteInfo {
  std::string id;
  std::string description;
  std::function<SweepReport(const SweepBounds&)> run;
};

inline const std::vector<SuiteInfo>& sweep_suites() {
  static const std::vector<SuiteInfo> suites = {
      {"cubical-identities", "projection and connection identities against face maps", sweeps::cubical_identities},
      {"factorization", "active-face factorization round-trip and uniqueness", sweeps::factorization},
      {"hom-counts", "hom-set counts against direct characterizations", sweeps::hom_counts},
      {"tensor-faithful", "injectivity of the monoidal product on map pairs", sweeps::tensor_faithful},
      {"face-pullback", "pairwise face intersections factor through corners", sweeps::face_pullback},
      {"ez-factor", "Eilenberg-Zilber factorization against exhaustive search", sweeps::ez_factor_sweep},
      {"degen-one-face", "degenerate cubes never meet a non-degenerate cube in exactly one face",
       sweeps::degen_one_face},
      {"n-identities", "standard decomposition identities for composites", sweeps::n_identities},
      {"n-faces", "face trichotomy of standard decomposition cubes", sweeps::n_faces},
      {"n-active", "standard decomposition preserves activity", sweeps::n_active},
      {"n-tensor-tail", "tensor splitting and tail statistics of decompositions", sweeps::n_tensor_tail},
      {"n-special", "right-tensor and nested decompositions are degenerate", sweeps::n_special},
      {"n-crit-edge", "critical edges of decompositions degenerate over poset theories", sweeps::n_crit_edge},
      {"long-diagonal", "long diagonal naturality and deletion retractions", sweeps::long_diagonal_sweep},
      {"boundary-colim", "boundaries against the coequalizer gluing", sweeps::boundary_colim},
      {"functoriality", "presheaf functoriality and naturality spot checks", sweeps::functoriality},
      {"kan-extension", "left Kan extension against larger representables", sweeps::kan_extension},
      {"product-comparison", "geometric versus cartesian product comparisons", sweeps::product_comparison},
      {"cartesian-image", "cartesian image membership against direct enumeration", sweeps::cartesian_image},
      {"anodyne-unit", "unit inclusions certified by open-box filling", sweeps::anodyne_unit},
      {"anodyne-cartesian", "cartesian chain certified by open-box filling", sweeps::anodyne_cartesian},
      {"certificate-mutations", "corrupted certificates are rejected", sweeps::certificate_mutations},
  };
  return suites;
}

inline SweepReport run_suite(const std::string& id, const SweepBounds& b) {
  for (const SuiteInfo& s : sweep_suites())
    if (s.id == id) return s.run(b);
  throw std::invalid_argument("unknown suite: " + id);
}

}  // namespace cubical
