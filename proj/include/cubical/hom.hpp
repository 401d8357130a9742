#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cubical/cube_map.hpp"
#include "cubical/theory.hpp"

namespace cubical {

struct EnumLimits {
  int max_dim = 8;
  std::size_t max_maps = 40'000'000;
};

inline EnumLimits& enum_limits() {
  static EnumLimits limits;
  return limits;
}

namespace detail {

// All generators with domain dimension p admitted by the theory, restricted
// to codomain dimensions <= cap.
inline std::vector<CubeMap> successor_generators(const Theory& t, int p, int cap) {
  std::vector<CubeMap> out;
  if (p + 1 <= cap) {
    for (int i = 1; i <= p + 1; ++i)
      for (int eps = 0; eps <= 1; ++eps) out.push_back(face_map(p + 1, i, eps));
    if (t.has(Symbol::delta))
      for (int i = 1; i <= p; ++i) out.push_back(diagonal_map(p + 1, i));
  }
  if (p >= 1) {
    for (int i = 1; i <= p; ++i) out.push_back(projection_map(p - 1, i));
    for (int i = 1; i <= p - 1; ++i) {
      if (t.has(Symbol::meet)) out.push_back(connection_map(p - 1, i, 1));
      if (t.has(Symbol::join)) out.push_back(connection_map(p - 1, i, 0));
    }
  }
  if (t.has(Symbol::sigma))
    for (int i = 1; i <= p - 1; ++i) out.push_back(transposition_map(p, i));
  if (t.has(Symbol::rho))
    for (int i = 1; i <= p; ++i) out.push_back(reversal_map(p, i));
  return out;
}

struct BfsResult {
  // Maps m -> n reachable as generator words whose intermediate codomain
  // dimensions stay <= cap, grouped by codomain dimension and sorted.
  std::vector<std::vector<CubeMap>> by_codomain;
};

// Closure of the generators under post-composition, starting from the
// identity on the source. Every prefix of a generator word is itself a map
// out of the source, so a breadth-first walk over post-composition reaches
// exactly the words whose intermediate dimensions respect the cap.
inline std::shared_ptr<const BfsResult> bfs_from_source(const Theory& t, int m, int cap) {
  using Key = std::tuple<unsigned, int, int>;
  static std::map<Key, std::shared_ptr<const BfsResult>> memo;
  static std::mutex mu;
  const Key key{t.mask(), m, cap};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  auto res = std::make_shared<BfsResult>();
  res->by_codomain.resize(static_cast<std::size_t>(cap) + 1);
  std::unordered_set<CubeMap, CubeMapHash> seen;
  std::deque<CubeMap> work;
  std::vector<std::vector<CubeMap>> gens(static_cast<std::size_t>(cap) + 1);
  for (int p = 0; p <= cap; ++p) gens[static_cast<std::size_t>(p)] = successor_generators(t, p, cap);

  const CubeMap id = CubeMap::identity(m);
  seen.insert(id);
  work.push_back(id);
  while (!work.empty()) {
    const CubeMap f = std::move(work.front());
    work.pop_front();
    const int p = f.codomain_dim();
    for (const CubeMap& g : gens[static_cast<std::size_t>(p)]) {
      CubeMap h = compose(g, f);
      if (seen.insert(h).second) {
        if (seen.size() > enum_limits().max_maps)
          throw std::runtime_error("enumerate_hom: state limit exceeded");
        work.push_back(std::move(h));
      }
    }
  }
  for (const CubeMap& f : seen) res->by_codomain[static_cast<std::size_t>(f.codomain_dim())].push_back(f);
  for (auto& v : res->by_codomain) std::sort(v.begin(), v.end());

  std::lock_guard<std::mutex> lock(mu);
  auto [it, _] = memo.emplace(key, std::move(res));
  return it->second;
}

inline std::vector<CubeMap> all_functions(int m, int n) {
  const std::size_t dom = std::size_t{1} << m;
  const std::uint64_t codom = std::uint64_t{1} << n;
  double count = 1.0;
  for (std::size_t i = 0; i < dom; ++i) {
    count *= static_cast<double>(codom);
    if (count > static_cast<double>(enum_limits().max_maps))
      throw std::runtime_error("enumerate_hom: full-theory bounds exceeded");
  }
  std::vector<CubeMap> out;
  std::vector<std::uint32_t> table(dom, 0);
  while (true) {
    out.emplace_back(m, n, table);
    std::size_t i = 0;
    while (i < dom) {
      if (++table[i] < codom) break;
      table[i] = 0;
      ++i;
    }
    if (i == dom) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<CubeMap> all_monotone(int m, int n) {
  const std::size_t dom = std::size_t{1} << m;
  std::vector<CubeMap> out;
  std::vector<std::uint32_t> table(dom, 0);
  // Assign values in lexicographic vertex order; each vertex only needs
  // checking against its immediate lower neighbours.
  std::vector<std::vector<std::size_t>> lower(dom);
  for (std::size_t v = 0; v < dom; ++v)
    for (int j = 0; j < m; ++j)
      if (v & (std::size_t{1} << j)) lower[v].push_back(v & ~(std::size_t{1} << j));
  const std::uint32_t top = (n == 0) ? 0u : ((1u << n) - 1u);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == dom) {
      out.emplace_back(m, n, table);
      if (out.size() > enum_limits().max_maps) throw std::runtime_error("enumerate_hom: poset bounds exceeded");
      return;
    }
    for (std::uint32_t val = 0; val <= top; ++val) {
      bool ok = true;
      for (std::size_t w : lower[v])
        if ((table[w] & ~val) != 0) { ok = false; break; }
      if (ok) {
        table[v] = val;
        rec(v + 1);
      }
      if (n == 0) break;
    }
    table[v] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Intermediate-dimension cap for generator words. Without diagonals every
// map factors as a degree-lowering composite followed by a degree-raising
// one, so max(m, n) is exact; diagonals can force detours through higher
// dimensions, covered here by a fixed headroom.
inline int default_cap(const Theory& t, int m, int n) {
  const int base = std::max(m, n);
  return t.has(Symbol::delta) ? base + 2 : base;
}

}  // namespace detail

// The hom-set of the cube category: all morphisms {0,1}^m -> {0,1}^n lying
// in the subcategory named by the theory, in canonical sorted order.
//
// The full theory and the poset theory use direct characterizations (all
// functions; all monotone functions). Other theories are enumerated by
// breadth-first closure of the admitted generators under composition; for
// theories without diagonals this closure is exact.
inline std::vector<CubeMap> enumerate_hom(const Theory& t, int m, int n, int cap = -1) {
  if (m < 0 || n < 0 || m > enum_limits().max_dim || n > enum_limits().max_dim)
    throw std::invalid_argument("enumerate_hom: bounds exceeded");
  if (t == Theory::full()) return detail::all_functions(m, n);
  if (t == Theory::poset()) return detail::all_monotone(m, n);
  if (cap < 0) cap = detail::default_cap(t, m, n);
  auto bfs = detail::bfs_from_source(t, m, cap);
  if (n >= static_cast<int>(bfs->by_codomain.size())) return {};
  return bfs->by_codomain[static_cast<std::size_t>(n)];
}

inline bool is_member(const Theory& t, const CubeMap& f, int cap = -1) {
  const int m = f.domain_dim(), n = f.codomain_dim();
  if (m > enum_limits().max_dim || n > enum_limits().max_dim)
    throw std::invalid_argument("is_member: bounds exceeded");
  if (t == Theory::full()) return true;
  if (t == Theory::poset()) return is_monotone(f);
  if (cap < 0) cap = detail::default_cap(t, m, n);
  auto bfs = detail::bfs_from_source(t, m, cap);
  const auto& v = bfs->by_codomain[static_cast<std::size_t>(n)];
  return std::binary_search(v.begin(), v.end(), f);
}

inline std::vector<CubeMap> active_maps(const Theory& t, int m, int n, int cap = -1) {
  std::vector<CubeMap> out;
  for (const CubeMap& f : enumerate_hom(t, m, n, cap))
    if (is_active(f)) out.push_back(f);
  return out;
}

// Elementary degeneracies out of dimension d admitted by the theory,
// paired with a section (a face map splitting them).
struct ElementaryDegeneracy {
  CubeMap map;      // d -> d-1
  CubeMap section;  // d-1 -> d
};

inline std::vector<ElementaryDegeneracy> elementary_degeneracies(const Theory& t, int d) {
  std::vector<ElementaryDegeneracy> out;
  if (d < 1) return out;
  for (int i = 1; i <= d; ++i) out.push_back({projection_map(d - 1, i), face_map(d, i, 0)});
  for (int i = 1; i <= d - 1; ++i) {
    if (t.has(Symbol::meet)) out.push_back({connection_map(d - 1, i, 1), face_map(d, i, 1)});
    if (t.has(Symbol::join)) out.push_back({connection_map(d - 1, i, 0), face_map(d, i, 0)});
  }
  return out;
}

// If f factors as g . e for the elementary degeneracy e, returns g.
inline std::optional<CubeMap> divide_by_degeneracy(const CubeMap& f, const ElementaryDegeneracy& e) {
  CubeMap g = compose(f, e.section);
  if (compose(g, e.map) == f) return g;
  return std::nullopt;
}

// Whether the map factors on the right through a degeneracy admitted by the
// theory. This is the sense in which a cube of a restricted representable is
// degenerate.
inline bool factors_through_degeneracy(const Theory& t, const CubeMap& f) {
  for (const auto& e : elementary_degeneracies(t, f.domain_dim()))
    if (divide_by_degeneracy(f, e)) return true;
  return false;
}

}  // namespace cubical
