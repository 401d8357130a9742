#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubical/factor.hpp"
#include "cubical/hom.hpp"
#include "cubical/theory.hpp"

namespace cubical {

class CubicalSet;
using CSet = std::shared_ptr<const CubicalSet>;

// Expression of a cube as the action of a generating cube along a map.
struct GenExpr {
  std::size_t gen;  // index into CubicalSet::generators
  CubeMap via;
};

// A dimension-truncated presheaf on a cube category: finite cube sets in
// each dimension up to the truncation, with a total action of all theory
// members between those dimensions. Values are immutable after construction.
class CubicalSet {
 public:
  Theory theory;
  int truncation = 0;
  std::vector<std::vector<std::string>> labels;  // per-dimension cube labels
  std::function<std::size_t(int, std::size_t, const CubeMap&)> action_fn;

  // Optional generating data: every cube is the action of some generator.
  std::vector<std::pair<int, std::size_t>> generators;  // (dim, index)
  std::function<GenExpr(int, std::size_t)> gen_expr;    // null when untracked

  std::size_t size(int d) const { return labels[static_cast<std::size_t>(d)].size(); }
  const std::string& label(int d, std::size_t i) const { return labels[static_cast<std::size_t>(d)][i]; }

  std::size_t action(int d, std::size_t i, const CubeMap& f) const {
    if (f.codomain_dim() != d || f.domain_dim() > truncation || d > truncation)
      throw std::invalid_argument("action: dimension mismatch");
    if (i >= size(d)) throw std::invalid_argument("action: no such cube");
    if (!is_member(theory, f)) throw std::invalid_argument("action: map not in theory");
    return action_fn(d, i, f);
  }
};

// A morphism of cubical sets over a shared theory and truncation, given by
// its per-dimension functions on cubes.
struct CSMap {
  CSet src, tgt;
  std::vector<std::vector<std::size_t>> level;

  std::size_t operator()(int d, std::size_t i) const { return level[static_cast<std::size_t>(d)][i]; }

  static CSMap identity(CSet X) {
    CSMap f{X, X, {}};
    f.level.resize(static_cast<std::size_t>(X->truncation) + 1);
    for (int d = 0; d <= X->truncation; ++d) {
      f.level[static_cast<std::size_t>(d)].resize(X->size(d));
      for (std::size_t i = 0; i < X->size(d); ++i) f.level[static_cast<std::size_t>(d)][i] = i;
    }
    return f;
  }

  bool injective(int d) const {
    std::vector<char> hit(tgt->size(d), 0);
    for (std::size_t v : level[static_cast<std::size_t>(d)]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }
  bool injective() const {
    for (int d = 0; d <= src->truncation; ++d)
      if (!injective(d)) return false;
    return true;
  }
  bool bijective() const {
    for (int d = 0; d <= src->truncation; ++d)
      if (src->size(d) != tgt->size(d) || !injective(d)) return false;
    return true;
  }
  CSMap inverse() const {
    if (!bijective()) throw std::invalid_argument("CSMap::inverse: not bijective");
    CSMap g{tgt, src, {}};
    g.level.resize(level.size());
    for (std::size_t d = 0; d < level.size(); ++d) {
      g.level[d].resize(level[d].size());
      for (std::size_t i = 0; i < level[d].size(); ++i) g.level[d][level[d][i]] = i;
    }
    return g;
  }
};

inline CSMap compose(const CSMap& g, const CSMap& f) {
  CSMap h{f.src, g.tgt, {}};
  h.level.resize(f.level.size());
  for (std::size_t d = 0; d < f.level.size(); ++d) {
    h.level[d].resize(f.level[d].size());
    for (std::size_t i = 0; i < f.level[d].size(); ++i) h.level[d][i] = g.level[d][f.level[d][i]];
  }
  return h;
}

// Naturality: the map commutes with every structure map, dimensions capped
// for cost control.
inline bool is_natural(const CSMap& f, int max_dim = -1, std::string* why = nullptr) {
  const int D = f.src->truncation;
  const int hi = (max_dim < 0) ? D : std::min(max_dim, D);
  for (int d = 0; d <= hi; ++d)
    for (int e = 0; e <= hi; ++e)
      for (const CubeMap& m : enumerate_hom(f.src->theory, e, d))
        for (std::size_t i = 0; i < f.src->size(d); ++i)
          if (f(e, f.src->action(d, i, m)) != f.tgt->action(d, f(d, i), m)) {
            if (why)
              *why = "naturality fails at dim " + std::to_string(d) + " cube " +
                     f.src->label(d, i) + " along " + m.to_string();
            return false;
          }
  return true;
}

// Functoriality of the action: identities act trivially and composites act
// as iterated actions. Exhaustive up to max_dim, with a deterministic sample
// above it.
inline bool is_functorial(const CSet& X, int max_dim = 2, std::size_t samples_above = 200,
                          std::string* why = nullptr) {
  const int D = X->truncation;
  const int hi = std::min(max_dim, D);
  for (int d = 0; d <= D; ++d)
    for (std::size_t i = 0; i < X->size(d); ++i)
      if (X->action(d, i, CubeMap::identity(d)) != i) {
        if (why) *why = "identity action fails at dim " + std::to_string(d);
        return false;
      }
  auto check = [&](int d, std::size_t i, const CubeMap& f, const CubeMap& g) {
    const std::size_t via_composite = X->action(d, i, compose(f, g));
    const std::size_t stepwise = X->action(f.domain_dim(), X->action(d, i, f), g);
    if (via_composite != stepwise) {
      if (why)
        *why = "composite action fails at dim " + std::to_string(d) + " cube " + X->label(d, i) +
               " along " + f.to_string() + " then " + g.to_string();
      return false;
    }
    return true;
  };
  for (int d = 0; d <= hi; ++d)
    for (int e = 0; e <= hi; ++e)
      for (int e2 = 0; e2 <= hi; ++e2)
        for (const CubeMap& f : enumerate_hom(X->theory, e, d))
          for (const CubeMap& g : enumerate_hom(X->theory, e2, e))
            for (std::size_t i = 0; i < X->size(d); ++i)
              if (!check(d, i, f, g)) return false;
  if (D > hi && samples_above > 0) {
    std::mt19937 rng(20240915u);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    for (std::size_t s = 0; s < samples_above; ++s) {
      const int d = static_cast<int>(pick(static_cast<std::size_t>(D) + 1));
      if (X->size(d) == 0) continue;
      const int e = static_cast<int>(pick(static_cast<std::size_t>(D) + 1));
      const int e2 = static_cast<int>(pick(static_cast<std::size_t>(e) + 1));
      auto fs = enumerate_hom(X->theory, e, d);
      auto gs = enumerate_hom(X->theory, e2, e);
      if (fs.empty() || gs.empty()) continue;
      if (!check(d, pick(X->size(d)), fs[pick(fs.size())], gs[pick(gs.size())])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Representables

// The representable presheaf on the n-cube, truncated at D: cubes in
// dimension d are the theory's maps d -> n, acting by pre-composition.
class Representable {
 public:
  Representable(const Theory& t, int n, int D) : n_(n) {
    const int cap = t.has(Symbol::delta) ? std::max(D, n) + 2 : std::max(D, n);
    auto data = std::make_shared<Data>();
    data->cubes.resize(static_cast<std::size_t>(D) + 1);
    data->index.resize(static_cast<std::size_t>(D) + 1);
    auto set = std::make_shared<CubicalSet>();
    set->theory = t;
    set->truncation = D;
    set->labels.resize(static_cast<std::size_t>(D) + 1);
    for (int d = 0; d <= D; ++d) {
      data->cubes[static_cast<std::size_t>(d)] = enumerate_hom(t, d, n, cap);
      for (std::size_t i = 0; i < data->cubes[static_cast<std::size_t>(d)].size(); ++i) {
        data->index[static_cast<std::size_t>(d)].emplace(data->cubes[static_cast<std::size_t>(d)][i], i);
        set->labels[static_cast<std::size_t>(d)].push_back(data->cubes[static_cast<std::size_t>(d)][i].to_string());
      }
    }
    set->action_fn = [data](int d, std::size_t i, const CubeMap& f) {
      const CubeMap comp = compose(data->cubes[static_cast<std::size_t>(d)][i], f);
      auto it = data->index[static_cast<std::size_t>(f.domain_dim())].find(comp);
      if (it == data->index[static_cast<std::size_t>(f.domain_dim())].end())
        throw std::runtime_error("representable action: composite escaped the enumerated hom-set");
      return it->second;
    };
    if (n <= D) {
      set->generators = {{n, data->index[static_cast<std::size_t>(n)].at(CubeMap::identity(n))}};
      auto cubes = data;
      set->gen_expr = [cubes](int d, std::size_t i) {
        return GenExpr{0, cubes->cubes[static_cast<std::size_t>(d)][i]};
      };
    }
    data_ = data;
    set_ = std::move(set);
  }

  const CSet& set() const { return set_; }
  int n() const { return n_; }
  int truncation() const { return set_->truncation; }
  const Theory& theory() const { return set_->theory; }
  const CubeMap& cube(int d, std::size_t i) const { return data_->cubes[static_cast<std::size_t>(d)][i]; }
  const std::vector<CubeMap>& cubes(int d) const { return data_->cubes[static_cast<std::size_t>(d)]; }
  std::size_t index(const CubeMap& f) const {
    auto it = data_->index[static_cast<std::size_t>(f.domain_dim())].find(f);
    if (it == data_->index[static_cast<std::size_t>(f.domain_dim())].end())
      throw std::invalid_argument("Representable::index: not a cube");
    return it->second;
  }
  bool contains(const CubeMap& f) const {
    if (f.domain_dim() > truncation()) return false;
    const auto& idx = data_->index[static_cast<std::size_t>(f.domain_dim())];
    return idx.find(f) != idx.end();
  }

 private:
  struct Data {
    std::vector<std::vector<CubeMap>> cubes;
    std::vector<std::unordered_map<CubeMap, std::size_t, CubeMapHash>> index;
  };
  int n_;
  std::shared_ptr<Data> data_;
  CSet set_;
};

inline CSet representable(const Theory& t, int n, int D) { return Representable(t, n, D).set(); }

inline CSet empty_cubical_set(const Theory& t, int D) {
  auto set = std::make_shared<CubicalSet>();
  set->theory = t;
  set->truncation = D;
  set->labels.resize(static_cast<std::size_t>(D) + 1);
  set->action_fn = [](int, std::size_t, const CubeMap&) -> std::size_t {
    throw std::invalid_argument("empty cubical set has no cubes");
  };
  set->gen_expr = [](int, std::size_t) -> GenExpr {
    throw std::invalid_argument("empty cubical set has no cubes");
  };
  return set;
}

// ---------------------------------------------------------------------------
// Subcomplexes

// A per-dimension subset of an ambient cubical set, closed under the action.
class Subcomplex {
 public:
  CSet ambient;
  std::vector<std::vector<char>> member;
  // Optional: expression of each member from seed cubes, filled by closure.
  std::vector<std::pair<int, std::size_t>> seeds;
  std::vector<std::vector<std::optional<GenExpr>>> exprs;

  explicit Subcomplex(CSet amb) : ambient(std::move(amb)) {
    member.resize(static_cast<std::size_t>(ambient->truncation) + 1);
    for (int d = 0; d <= ambient->truncation; ++d) member[static_cast<std::size_t>(d)].assign(ambient->size(d), 0);
  }

  bool contains(int d, std::size_t i) const { return member[static_cast<std::size_t>(d)][i] != 0; }
  void add(int d, std::size_t i) { member[static_cast<std::size_t>(d)][i] = 1; }
  std::size_t count(int d) const {
    const auto& v = member[static_cast<std::size_t>(d)];
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
  }

  bool is_closed() const {
    const int D = ambient->truncation;
    for (int d = 0; d <= D; ++d)
      for (std::size_t i = 0; i < ambient->size(d); ++i) {
        if (!contains(d, i)) continue;
        for (int e = 0; e <= D; ++e)
          for (const CubeMap& f : enumerate_hom(ambient->theory, e, d))
            if (!contains(e, ambient->action(d, i, f))) return false;
      }
    return true;
  }

  // Close under the full action, recording seed expressions when tracking.
  void close(bool track_exprs = false) {
    const int D = ambient->truncation;
    if (track_exprs) {
      exprs.assign(static_cast<std::size_t>(D) + 1, {});
      for (int d = 0; d <= D; ++d) exprs[static_cast<std::size_t>(d)].assign(ambient->size(d), std::nullopt);
      for (std::size_t s = 0; s < seeds.size(); ++s)
        exprs[static_cast<std::size_t>(seeds[s].first)][seeds[s].second] =
            GenExpr{s, CubeMap::identity(seeds[s].first)};
    }
    std::vector<std::pair<int, std::size_t>> work;
    for (int d = 0; d <= D; ++d)
      for (std::size_t i = 0; i < ambient->size(d); ++i)
        if (contains(d, i)) work.emplace_back(d, i);
    while (!work.empty()) {
      auto [d, i] = work.back();
      work.pop_back();
      for (int e = 0; e <= D; ++e)
        for (const CubeMap& f : enumerate_hom(ambient->theory, e, d)) {
          const std::size_t j = ambient->action(d, i, f);
          if (!contains(e, j)) {
            add(e, j);
            if (track_exprs) {
              const auto& src = exprs[static_cast<std::size_t>(d)][i];
              exprs[static_cast<std::size_t>(e)][j] = GenExpr{src->gen, compose(src->via, f)};
            }
            work.emplace_back(e, j);
          }
        }
    }
  }

  struct View {
    CSet set;
    CSMap inclusion;
    std::vector<std::vector<std::size_t>> to_ambient;
    std::vector<std::vector<std::size_t>> from_ambient;  // npos when absent
  };

  // The subcomplex as a standalone cubical set, with its inclusion.
  View as_cubical_set() const {
    const int D = ambient->truncation;
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    auto view = std::make_shared<CubicalSet>();
    view->theory = ambient->theory;
    view->truncation = D;
    view->labels.resize(static_cast<std::size_t>(D) + 1);
    auto to_amb = std::make_shared<std::vector<std::vector<std::size_t>>>(static_cast<std::size_t>(D) + 1);
    auto from_amb = std::make_shared<std::vector<std::vector<std::size_t>>>(static_cast<std::size_t>(D) + 1);
    for (int d = 0; d <= D; ++d) {
      (*from_amb)[static_cast<std::size_t>(d)].assign(ambient->size(d), npos);
      for (std::size_t i = 0; i < ambient->size(d); ++i)
        if (contains(d, i)) {
          (*from_amb)[static_cast<std::size_t>(d)][i] = (*to_amb)[static_cast<std::size_t>(d)].size();
          (*to_amb)[static_cast<std::size_t>(d)].push_back(i);
          view->labels[static_cast<std::size_t>(d)].push_back(ambient->label(d, i));
        }
    }
    CSet amb = ambient;
    view->action_fn = [amb, to_amb, from_amb](int d, std::size_t i, const CubeMap& f) {
      const std::size_t j = amb->action_fn(d, (*to_amb)[static_cast<std::size_t>(d)][i], f);
      const std::size_t v = (*from_amb)[static_cast<std::size_t>(f.domain_dim())][j];
      if (v == npos) throw std::runtime_error("subcomplex view: action escaped the subcomplex");
      return v;
    };
    if (!seeds.empty() && !exprs.empty()) {
      for (const auto& [d, i] : seeds)
        view->generators.emplace_back(d, (*from_amb)[static_cast<std::size_t>(d)][i]);
      auto ex = std::make_shared<std::vector<std::vector<std::optional<GenExpr>>>>(exprs);
      view->gen_expr = [ex, to_amb](int d, std::size_t i) {
        return *(*ex)[static_cast<std::size_t>(d)][(*to_amb)[static_cast<std::size_t>(d)][i]];
      };
    }
    View out;
    out.set = view;
    out.inclusion.src = view;
    out.inclusion.tgt = ambient;
    out.inclusion.level = *to_amb;
    out.to_ambient = *to_amb;
    out.from_ambient = *from_amb;
    return out;
  }
};

// Least action-closed subset containing the seeds.
inline Subcomplex subcomplex_generated(CSet X, const std::vector<std::pair<int, std::size_t>>& seeds) {
  Subcomplex s(std::move(X));
  for (const auto& [d, i] : seeds) {
    if (d > s.ambient->truncation || i >= s.ambient->size(d))
      throw std::invalid_argument("subcomplex_generated: foreign cube");
    s.add(d, i);
  }
  s.seeds = seeds;
  s.close(/*track_exprs=*/true);
  return s;
}

// The boundary of the representable n-cube: all maps factoring through a
// proper face, i.e. fixing at least one coordinate.
inline Subcomplex boundary(const Representable& R) {
  if (R.n() < 1) throw std::invalid_argument("boundary: n must be at least 1");
  std::vector<std::pair<int, std::size_t>> seeds;
  if (R.n() - 1 <= R.truncation())
    for (int i = 1; i <= R.n(); ++i)
      for (int eps = 0; eps <= 1; ++eps) seeds.emplace_back(R.n() - 1, R.index(face_map(R.n(), i, eps)));
  Subcomplex s = subcomplex_generated(R.set(), seeds);
  // Cross-check the closure against the fixed-coordinate characterization.
  for (int d = 0; d <= R.truncation(); ++d)
    for (std::size_t i = 0; i < R.set()->size(d); ++i)
      if (s.contains(d, i) != !fixed_coordinates(R.cube(d, i)).empty())
        throw std::runtime_error("boundary: closure disagrees with the face characterization");
  return s;
}

inline Subcomplex boundary(const Theory& t, int n, int D) { return boundary(Representable(t, n, D)); }

// The (i, eps)-open box: the union of all faces except the (i, eps) one.
inline Subcomplex open_box(const Representable& R, int i, int eps) {
  const int n = R.n();
  if (n < 1 || i < 1 || i > n || (eps != 0 && eps != 1)) throw std::invalid_argument("open_box: bad index");
  std::vector<std::pair<int, std::size_t>> seeds;
  if (n - 1 <= R.truncation())
    for (int j = 1; j <= n; ++j)
      for (int e = 0; e <= 1; ++e)
        if (!(j == i && e == eps)) seeds.emplace_back(n - 1, R.index(face_map(n, j, e)));
  Subcomplex s = subcomplex_generated(R.set(), seeds);
  for (int d = 0; d <= R.truncation(); ++d)
    for (std::size_t c = 0; c < R.set()->size(d); ++c) {
      auto fixed = fixed_coordinates(R.cube(d, c));
      bool other_face = false;
      for (const auto& [fi, fe] : fixed)
        if (!(fi == i && fe == eps)) other_face = true;
      if (s.contains(d, c) != other_face)
        throw std::runtime_error("open_box: closure disagrees with the face characterization");
    }
  return s;
}

inline Subcomplex open_box(const Theory& t, int n, int i, int eps, int D) {
  return open_box(Representable(t, n, D), i, eps);
}

// ---------------------------------------------------------------------------
// Degeneracy structure of cubes

inline bool is_degenerate_cube(const CSet& X, int d, std::size_t i) {
  if (d == 0) return false;
  for (const auto& e : elementary_degeneracies(X->theory, d))
    for (std::size_t y = 0; y < X->size(d - 1); ++y)
      if (X->action(d - 1, y, e.map) == i) return true;
  return false;
}

struct CubeEZ {
  int seed_dim;
  std::size_t seed;
  CubeMap degeneracy;  // seed . degeneracy = cube; identity when non-degenerate
};

// Iterated elementary stripping; unique over connections-only theories.
inline CubeEZ ez_cube_factor(const CSet& X, int d, std::size_t i) {
  if (!X->theory.connections_only())
    throw std::invalid_argument("ez_cube_factor: theory admits sigma, rho or delta");
  CubeMap mu = CubeMap::identity(d);
  int cd = d;
  std::size_t cur = i;
  bool progressed = true;
  while (progressed && cd > 0) {
    progressed = false;
    for (const auto& e : elementary_degeneracies(X->theory, cd)) {
      for (std::size_t y = 0; y < X->size(cd - 1); ++y)
        if (X->action(cd - 1, y, e.map) == cur) {
          mu = compose(e.map, mu);
          cur = y;
          --cd;
          progressed = true;
          break;
        }
      if (progressed) break;
    }
  }
  return {cd, cur, std::move(mu)};
}

inline std::vector<std::pair<int, std::size_t>> nondegenerate_cubes(const CSet& X) {
  std::vector<std::pair<int, std::size_t>> out;
  for (int d = 0; d <= X->truncation; ++d)
    for (std::size_t i = 0; i < X->size(d); ++i)
      if (!is_degenerate_cube(X, d, i)) out.emplace_back(d, i);
  return out;
}

// ---------------------------------------------------------------------------
// Cartesian product

struct CartesianProduct {
  CSet set;
  CSMap proj_x, proj_y;

  std::size_t pair_index(int d, std::size_t i, std::size_t j) const {
    return i * y_sizes[static_cast<std::size_t>(d)] + j;
  }
  std::pair<std::size_t, std::size_t> components(int d, std::size_t idx) const {
    const std::size_t w = y_sizes[static_cast<std::size_t>(d)];
    return {idx / w, idx % w};
  }
  std::vector<std::size_t> y_sizes;
};

inline CartesianProduct cartesian_product(CSet X, CSet Y) {
  if (X->theory != Y->theory || X->truncation != Y->truncation)
    throw std::invalid_argument("cartesian_product: theory or truncation mismatch");
  const int D = X->truncation;
  auto set = std::make_shared<CubicalSet>();
  set->theory = X->theory;
  set->truncation = D;
  set->labels.resize(static_cast<std::size_t>(D) + 1);
  CartesianProduct out;
  out.y_sizes.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.y_sizes[static_cast<std::size_t>(d)] = Y->size(d);
    for (std::size_t i = 0; i < X->size(d); ++i)
      for (std::size_t j = 0; j < Y->size(d); ++j)
        set->labels[static_cast<std::size_t>(d)].push_back("(" + X->label(d, i) + "," + Y->label(d, j) + ")");
  }
  auto ys = out.y_sizes;
  CSet xs = X, yt = Y;
  set->action_fn = [xs, yt, ys](int d, std::size_t idx, const CubeMap& f) {
    const std::size_t w = ys[static_cast<std::size_t>(d)];
    const std::size_t i = idx / w, j = idx % w;
    return xs->action_fn(d, i, f) * ys[static_cast<std::size_t>(f.domain_dim())] + yt->action_fn(d, j, f);
  };
  out.set = set;
  out.proj_x.src = set;
  out.proj_x.tgt = X;
  out.proj_y.src = set;
  out.proj_y.tgt = Y;
  out.proj_x.level.resize(static_cast<std::size_t>(D) + 1);
  out.proj_y.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d)
    for (std::size_t i = 0; i < X->size(d); ++i)
      for (std::size_t j = 0; j < Y->size(d); ++j) {
        out.proj_x.level[static_cast<std::size_t>(d)].push_back(i);
        out.proj_y.level[static_cast<std::size_t>(d)].push_back(j);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Geometric product (Day convolution)

// Built from formal cells (x, y, phi) with x, y generating cubes of the
// factors and phi a theory map into the tensor of their dimensions,
// quotiented by the bifunctoriality congruence via union-find. Cells rooted
// at generators suffice: every cube of a factor is the action of a
// generator, which connects an arbitrary cell to a generator-rooted one in
// a single congruence move.
class GeometricProduct {
 public:
  GeometricProduct(CSet X, CSet Y) : core_(std::make_shared<Core>()) {
    core_->x = std::move(X);
    core_->y = std::move(Y);
    if (core_->x->theory != core_->y->theory || core_->x->truncation != core_->y->truncation)
      throw std::invalid_argument("geometric_product: theory or truncation mismatch");
    if (!core_->x->gen_expr || !core_->y->gen_expr)
      throw std::invalid_argument("geometric_product: factors must carry generator expressions");
    core_->build();
    finish();
  }

  const CSet& set() const { return set_; }

  // Index of the class of the cell (generator gx, generator gy, phi).
  std::size_t cell_index(std::size_t gx, std::size_t gy, const CubeMap& phi) const {
    return core_->cell_class(gx, gy, phi);
  }

  // The cube x (x) y; requires dim(x) + dim(y) <= truncation.
  std::size_t pairing(int dx, std::size_t x, int dy, std::size_t y) const {
    if (dx + dy > core_->x->truncation)
      throw std::invalid_argument("pairing: dimension exceeds the truncation");
    const GenExpr ex = core_->x->gen_expr(dx, x);
    const GenExpr ey = core_->y->gen_expr(dy, y);
    return cell_index(ex.gen, ey.gen, tensor(ex.via, ey.via));
  }

  // Canonical representative cell of a cube: (x generator, y generator, phi).
  std::tuple<std::size_t, std::size_t, CubeMap> cell_rep(int d, std::size_t i) const {
    const Key& k = core_->rep[static_cast<std::size_t>(d)][i];
    return {k.gx, k.gy, k.phi};
  }

  const CSet& factor_x() const { return core_->x; }
  const CSet& factor_y() const { return core_->y; }

 private:
  struct Key {
    std::size_t gx, gy;
    CubeMap phi;
    bool operator==(const Key& o) const { return gx == o.gx && gy == o.gy && phi == o.phi; }
    bool operator<(const Key& o) const {
      if (gx != o.gx) return gx < o.gx;
      if (gy != o.gy) return gy < o.gy;
      return phi < o.phi;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return CubeMapHash{}(k.phi) ^ (k.gx * 0x9e3779b97f4a7c15ull) ^ (k.gy * 0xc2b2ae3d27d4eb4full);
    }
  };

  struct Core {
    CSet x, y;
    std::vector<Key> cells;
    std::unordered_map<Key, std::size_t, KeyHash> cell_id;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> class_of;
    std::vector<std::vector<Key>> rep;

    std::size_t root(std::size_t c) const {
      while (parent[c] != c) c = parent[c];
      return c;
    }

    std::size_t cell_class(std::size_t gx, std::size_t gy, const CubeMap& phi) const {
      auto it = cell_id.find(Key{gx, gy, phi});
      if (it == cell_id.end()) throw std::invalid_argument("cell_index: no such cell");
      return class_of[root(it->second)];
    }

    void unite(std::size_t a, std::size_t b, std::vector<std::pair<std::size_t, std::size_t>>& queue) {
      a = root(a);
      b = root(b);
      if (a == b) return;
      if (b < a) std::swap(a, b);
      parent[b] = a;
      queue.emplace_back(a, b);
    }

    void build() {
      const Theory& t = x->theory;
      const int D = x->truncation;
      const auto& gens_x = x->generators;
      const auto& gens_y = y->generators;

      // Materialize generator-rooted cells in all cube dimensions <= D.
      for (std::size_t gx = 0; gx < gens_x.size(); ++gx)
        for (std::size_t gy = 0; gy < gens_y.size(); ++gy) {
          const int ab = gens_x[gx].first + gens_y[gy].first;
          if (ab > max_cube_dim) throw std::invalid_argument("geometric_product: dimension overflow");
          for (int k = 0; k <= D; ++k)
            for (const CubeMap& phi : enumerate_hom(t, k, ab)) {
              const std::size_t id = parent.size();
              if (cell_id.emplace(Key{gx, gy, phi}, id).second) {
                parent.push_back(id);
                cells.push_back(Key{gx, gy, phi});
              }
            }
        }

      // Coincidence lists: all generator expressions of each cube of a factor.
      auto expressions = [D, &t](const CSet& Z) {
        std::vector<std::map<std::size_t, std::vector<std::pair<std::size_t, CubeMap>>>> by_dim(
            static_cast<std::size_t>(D) + 1);
        for (std::size_t g = 0; g < Z->generators.size(); ++g) {
          const auto [gd, gi] = Z->generators[g];
          for (int p = 0; p <= D; ++p)
            for (const CubeMap& alpha : enumerate_hom(t, p, gd))
              by_dim[static_cast<std::size_t>(p)][Z->action_fn(gd, gi, alpha)].emplace_back(g, alpha);
        }
        return by_dim;
      };
      const auto ex = expressions(x);
      const auto ey = expressions(y);

      // One-sided identification: every expression of a cube is unified with
      // the cube's canonical expression, tensored with an identity on a
      // co-side generator. Arbitrary congruence moves reduce to instances of
      // this rule by pre-composing with the co-side expression map, which
      // keeps tensor dimensions within D plus the largest generator
      // dimension.
      std::vector<std::pair<std::size_t, std::size_t>> queue;
      auto unify_exprs = [&](bool x_side, std::size_t g1, const CubeMap& a1, std::size_t g2,
                             const CubeMap& a2, std::size_t co_gen, int co_dim) {
        const CubeMap idc = CubeMap::identity(co_dim);
        const CubeMap t1 = x_side ? tensor(a1, idc) : tensor(idc, a1);
        const CubeMap t2 = x_side ? tensor(a2, idc) : tensor(idc, a2);
        const std::size_t gx1 = x_side ? g1 : co_gen, gy1 = x_side ? co_gen : g1;
        const std::size_t gx2 = x_side ? g2 : co_gen, gy2 = x_side ? co_gen : g2;
        if (t1.domain_dim() <= D) {
          unite(cell_id.at(Key{gx1, gy1, t1}), cell_id.at(Key{gx2, gy2, t2}), queue);
        } else {
          for (int k = 0; k <= D; ++k)
            for (const CubeMap& psi : enumerate_hom(t, k, t1.domain_dim()))
              unite(cell_id.at(Key{gx1, gy1, compose(t1, psi)}),
                    cell_id.at(Key{gx2, gy2, compose(t2, psi)}), queue);
        }
      };
      for (int p = 0; p <= D; ++p) {
        for (const auto& [cx, lx] : ex[static_cast<std::size_t>(p)]) {
          const GenExpr canon = x->gen_expr(p, cx);
          for (const auto& [g, alpha] : lx) {
            if (g == canon.gen && alpha == canon.via) continue;
            for (std::size_t h = 0; h < gens_y.size(); ++h)
              unify_exprs(true, g, alpha, canon.gen, canon.via, h, gens_y[h].first);
          }
        }
        for (const auto& [cy, ly] : ey[static_cast<std::size_t>(p)]) {
          const GenExpr canon = y->gen_expr(p, cy);
          for (const auto& [g, alpha] : ly) {
            if (g == canon.gen && alpha == canon.via) continue;
            for (std::size_t h = 0; h < gens_x.size(); ++h)
              unify_exprs(false, g, alpha, canon.gen, canon.via, h, gens_x[h].first);
          }
        }
      }
      // Congruence closure: whenever two classes merge, merge all their
      // pre-compositions as well; transitivity extends this to members.
      while (!queue.empty()) {
        auto [a, b] = queue.back();
        queue.pop_back();
        const Key ka = cells[a];
        const Key kb = cells[b];
        const int d = ka.phi.domain_dim();
        for (int k = 0; k <= D; ++k)
          for (const CubeMap& psi : enumerate_hom(t, k, d))
            unite(cell_id.at(Key{ka.gx, ka.gy, compose(ka.phi, psi)}),
                  cell_id.at(Key{kb.gx, kb.gy, compose(kb.phi, psi)}), queue);
      }

      // Canonical class order: by minimal member cell per dimension.
      std::map<std::size_t, Key> min_member;
      for (std::size_t c = 0; c < parent.size(); ++c) {
        const std::size_t r = root(c);
        auto it = min_member.find(r);
        if (it == min_member.end() || cells[c] < it->second) {
          if (it == min_member.end()) min_member.emplace(r, cells[c]);
          else it->second = cells[c];
        }
      }
      std::vector<std::vector<std::pair<Key, std::size_t>>> by_dim(static_cast<std::size_t>(D) + 1);
      for (const auto& [r, k] : min_member)
        by_dim[static_cast<std::size_t>(k.phi.domain_dim())].emplace_back(k, r);
      class_of.assign(parent.size(), 0);
      rep.resize(static_cast<std::size_t>(D) + 1);
      for (int d = 0; d <= D; ++d) {
        auto& v = by_dim[static_cast<std::size_t>(d)];
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < v.size(); ++i) {
          class_of[v[i].second] = i;
          rep[static_cast<std::size_t>(d)].push_back(v[i].first);
        }
      }
    }
  };

  void finish() {
    auto core = core_;
    const int D = core->x->truncation;
    auto set = std::make_shared<CubicalSet>();
    set->theory = core->x->theory;
    set->truncation = D;
    set->labels.resize(static_cast<std::size_t>(D) + 1);
    for (int d = 0; d <= D; ++d)
      for (const Key& k : core->rep[static_cast<std::size_t>(d)]) {
        const auto& gx = core->x->generators[k.gx];
        const auto& gy = core->y->generators[k.gy];
        set->labels[static_cast<std::size_t>(d)].push_back(
            core->x->label(gx.first, gx.second) + "(x)" + core->y->label(gy.first, gy.second) + "." +
            k.phi.to_string());
      }
    set->action_fn = [core](int d, std::size_t i, const CubeMap& f) {
      const Key& k = core->rep[static_cast<std::size_t>(d)][i];
      return core->cell_class(k.gx, k.gy, compose(k.phi, f));
    };
    bool gens_ok = true;
    for (const auto& gx : core->x->generators)
      for (const auto& gy : core->y->generators)
        if (gx.first + gy.first > D) gens_ok = false;
    if (gens_ok) {
      for (std::size_t gx = 0; gx < core->x->generators.size(); ++gx)
        for (std::size_t gy = 0; gy < core->y->generators.size(); ++gy) {
          const int ab = core->x->generators[gx].first + core->y->generators[gy].first;
          set->generators.emplace_back(ab, core->cell_class(gx, gy, CubeMap::identity(ab)));
        }
      const std::size_t gy_count = core->y->generators.size();
      set->gen_expr = [core, gy_count](int d, std::size_t i) {
        const Key& k = core->rep[static_cast<std::size_t>(d)][i];
        return GenExpr{k.gx * gy_count + k.gy, k.phi};
      };
    }
    set_ = set;
  }

  std::shared_ptr<Core> core_;
  CSet set_;
};

}  // namespace cubical
