#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubical/cube_map.hpp"
#include "cubical/hom.hpp"

namespace cubical {

// A normalized composite of face maps into the n-cube: entries (i, eps) with
// strictly decreasing indices, each index fixed at its side.
struct FaceList {
  std::vector<std::pair<int, int>> entries;
  int target_dim = 0;

  FaceList() = default;
  FaceList(std::vector<std::pair<int, int>> e, int n) : entries(std::move(e)), target_dim(n) { validate(); }

  int source_dim() const { return target_dim - static_cast<int>(entries.size()); }
  bool empty() const { return entries.empty(); }

  void validate() const {
    if (static_cast<int>(entries.size()) > target_dim) throw std::invalid_argument("FaceList: too many entries");
    int prev = target_dim + 1;
    for (const auto& [i, eps] : entries) {
      if (i < 1 || i >= prev || (eps != 0 && eps != 1)) throw std::invalid_argument("FaceList: bad entry");
      prev = i;
    }
  }

  friend bool operator==(const FaceList& a, const FaceList& b) {
    return a.target_dim == b.target_dim && a.entries == b.entries;
  }
  friend bool operator<(const FaceList& a, const FaceList& b) {
    if (a.target_dim != b.target_dim) return a.target_dim < b.target_dim;
    return a.entries < b.entries;
  }
};

// The composite face map of a FaceList. The listed coordinates are exactly
// the fixed ones, so the table can be built directly: place each side at its
// coordinate and fill the rest from the source vertex in order.
inline CubeMap faces_map(const FaceList& k) {
  const int n = k.target_dim;
  const int p = k.source_dim();
  std::uint32_t fixed_bits = 0, fixed_mask = 0;
  for (const auto& [i, eps] : k.entries) {
    fixed_mask |= 1u << (n - i);
    if (eps) fixed_bits |= 1u << (n - i);
  }
  return CubeMap::from_function(p, n, [&](std::uint32_t v) {
    std::uint32_t out = fixed_bits;
    int src = p - 1;
    for (int i = 1; i <= n; ++i) {
      if (fixed_mask & (1u << (n - i))) continue;
      out |= ((v >> src) & 1u) << (n - i);
      --src;
    }
    return out;
  });
}

// All face composites from dimension p into dimension n, in canonical order.
inline std::vector<FaceList> enumerate_face_lists(int p, int n) {
  if (p > n || p < 0) throw std::invalid_argument("enumerate_face_lists: bad dimensions");
  const int drop = n - p;
  std::vector<FaceList> out;
  std::vector<int> idx(static_cast<std::size_t>(drop));
  // Choose the fixed coordinate set (descending) and all side assignments.
  std::function<void(int, int)> choose = [&](int pos, int max_i) {
    if (pos == drop) {
      for (unsigned sides = 0; sides < (1u << drop); ++sides) {
        std::vector<std::pair<int, int>> entries;
        for (int q = 0; q < drop; ++q)
          entries.emplace_back(idx[static_cast<std::size_t>(q)], static_cast<int>((sides >> q) & 1u));
        out.emplace_back(std::move(entries), n);
      }
      return;
    }
    for (int i = max_i; i >= 1 + (drop - pos - 1); --i) {
      idx[static_cast<std::size_t>(pos)] = i;
      choose(pos + 1, i - 1);
    }
  };
  choose(0, n);
  std::sort(out.begin(), out.end());
  return out;
}

struct ActiveFaceFactorization {
  FaceList kappa;   // face part, into the codomain
  CubeMap active;   // active part
};

// Unique factorization f = faces(kappa) . active with the face indices being
// exactly the coordinates fixed by f, in strictly decreasing order.
inline ActiveFaceFactorization active_face_factor(const CubeMap& f) {
  const int n = f.codomain_dim();
  auto fixed = fixed_coordinates(f);
  std::sort(fixed.begin(), fixed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  FaceList kappa(fixed, n);
  const int p = kappa.source_dim();
  std::uint32_t fixed_mask = 0;
  for (const auto& [i, eps] : fixed) fixed_mask |= 1u << (n - i);
  CubeMap active = CubeMap::from_function(f.domain_dim(), p, [&](std::uint32_t v) {
    const std::uint32_t w = f(v);
    std::uint32_t out = 0;
    int dst = p - 1;
    for (int i = 1; i <= n; ++i) {
      if (fixed_mask & (1u << (n - i))) continue;
      out |= ((w >> (n - i)) & 1u) << dst;
      --dst;
    }
    return out;
  });
  return {std::move(kappa), std::move(active)};
}

struct EZFactorization {
  FaceList kappa;
  CubeMap degeneracy;  // in (Box_A)_-, possibly the identity
};

// Eilenberg-Zilber factorization over a connections-only theory: the active
// part of the face factorization, which must lie in the degeneracy monoid of
// the theory. Isomorphisms in these theories are identities, so checking
// membership of the active part realizes the EZ decomposition.
inline EZFactorization ez_factor(const Theory& t, const CubeMap& f) {
  if (!t.connections_only()) throw std::invalid_argument("ez_factor: theory admits sigma, rho or delta");
  if (!is_member(t, f)) throw std::invalid_argument("ez_factor: map not in theory");
  auto aff = active_face_factor(f);
  if (!is_member(t, aff.active)) throw std::runtime_error("ez_factor: active part escaped the theory");
  return {std::move(aff.kappa), std::move(aff.active)};
}

// Non-isomorphisms of the degree-lowering class of a connections-only
// theory: active, non-identity members.
inline bool is_degeneracy(const Theory& t, const CubeMap& f) {
  if (!t.connections_only()) throw std::invalid_argument("is_degeneracy: theory admits sigma, rho or delta");
  if (!is_member(t, f)) throw std::invalid_argument("is_degeneracy: map not in theory");
  return is_active(f) && !f.is_identity();
}

// Largest k such that f = f' (x) id_k, found by table inspection: the last k
// coordinates pass through and the rest ignore them.
inline int tail_length(const CubeMap& f) {
  const int m = f.domain_dim(), p = f.codomain_dim();
  for (int k = std::min(m, p); k >= 0; --k) {
    const std::uint32_t kmask = (k == 0) ? 0u : ((1u << k) - 1u);
    bool ok = true;
    for (std::uint32_t v = 0; v < f.table().size() && ok; ++v) {
      if ((f(v) & kmask) != (v & kmask)) ok = false;
      else if ((f(v) >> k) != (f(v & ~kmask) >> k)) ok = false;
    }
    if (ok) return k;
  }
  return 0;
}

// The f' with f = f' (x) id_k; precondition: k <= tail_length(f).
inline CubeMap strip_tail(const CubeMap& f, int k) {
  const int m = f.domain_dim() - k, p = f.codomain_dim() - k;
  if (m < 0 || p < 0) throw std::invalid_argument("strip_tail: k too large");
  return CubeMap::from_function(m, p, [&](std::uint32_t v) { return f(v << k) >> k; });
}

}  // namespace cubical
