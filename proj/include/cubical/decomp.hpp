#pragma once

#include <stdexcept>

#include "cubical/cube_map.hpp"
#include "cubical/factor.hpp"

namespace cubical {

// D_n : {0,1}^n -> {0,1}^{2n}, repeating the whole tuple.
inline CubeMap long_diagonal(int n) {
  check_dim(2 * n, "long_diagonal");
  return CubeMap::from_function(n, 2 * n, [&](std::uint32_t v) { return (v << n) | v; });
}

// sigma^F_m : {0,1}^{m+n} -> {0,1}^n, deleting the first m coordinates.
inline CubeMap front_deletion(int m, int n) {
  check_dim(m + n, "front_deletion");
  const std::uint32_t mask = (n == 0) ? 0u : ((1u << n) - 1u);
  return CubeMap::from_function(m + n, n, [&](std::uint32_t v) { return v & mask; });
}

// sigma^L_n : {0,1}^{m+n} -> {0,1}^m, deleting the last n coordinates.
inline CubeMap last_deletion(int m, int n) {
  check_dim(m + n, "last_deletion");
  return CubeMap::from_function(m + n, m, [&](std::uint32_t v) { return v >> n; });
}

enum class Flavor { meet, join };

inline const char* flavor_name(Flavor f) { return f == Flavor::meet ? "meet" : "join"; }

// Standard decomposition cube N_k(phi) for phi : m -> n with n >= 1, as the
// explicit table: (a, b, c) maps to
//   (phi(a)_1, ..., phi(a)_{n-1}, phi(a)_n op b, c_1, ..., c_k)
// with op the connection of the chosen flavor.
inline CubeMap standard_decomposition(const CubeMap& phi, int k, Flavor flavor = Flavor::meet) {
  const int m = phi.domain_dim(), n = phi.codomain_dim();
  if (n < 1) throw std::invalid_argument("standard_decomposition: codomain dimension must be positive");
  if (k < 0) throw std::invalid_argument("standard_decomposition: negative k");
  check_dim(m + 1 + k, "standard_decomposition");
  check_dim(n + k, "standard_decomposition");
  const std::uint32_t cmask = (k == 0) ? 0u : ((1u << k) - 1u);
  return CubeMap::from_function(m + 1 + k, n + k, [&](std::uint32_t v) {
    const std::uint32_t a = v >> (1 + k);
    const std::uint32_t b = (v >> k) & 1u;
    const std::uint32_t c = v & cmask;
    const std::uint32_t fa = phi(a);
    const std::uint32_t last = fa & 1u;
    const std::uint32_t val = flavor == Flavor::meet ? (last & b) : (last | b);
    return ((((fa >> 1) << 1) | val) << k) | c;
  });
}

// The defining composite gamma_{n,1} . (phi (x) id_1 (x) id_k); kept as an
// independent route for cross-checking the explicit table.
inline CubeMap standard_decomposition_via_composite(const CubeMap& phi, int k, Flavor flavor = Flavor::meet) {
  const int n = phi.codomain_dim();
  if (n < 1) throw std::invalid_argument("standard_decomposition: codomain dimension must be positive");
  CubeMap body = tensor(tensor(phi, CubeMap::identity(1)), CubeMap::identity(k));
  CubeMap gamma = connection_map(n + k, n, flavor == Flavor::meet ? 1 : 0);
  return compose(gamma, body);
}

// The edge of the n-cube between the two vertices whose coordinates other
// than the i-th all equal 1 - eps.
inline CubeMap critical_edge(int n, int i, int eps) {
  if (n < 1 || i < 1 || i > n || (eps != 0 && eps != 1)) throw std::invalid_argument("critical_edge: bad index");
  const std::uint32_t others = eps ? 0u : (((n == 0) ? 0u : ((1u << n) - 1u)) ^ (1u << (n - i)));
  return CubeMap::from_function(1, n, [&](std::uint32_t a) { return others | (a << (n - i)); });
}

struct DecompositionStats {
  int base_dimension = 0;
  int tail_length = 0;
};

// Base dimension and tail length of the unique active-face factorization.
inline DecompositionStats stats(const CubeMap& f) {
  auto aff = active_face_factor(f);
  return {aff.active.codomain_dim(), tail_length(aff.active)};
}

}  // namespace cubical
