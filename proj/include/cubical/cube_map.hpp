#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubical/theory.hpp"

namespace cubical {

// Maximum cube dimension the packed vertex representation supports.
inline constexpr int max_cube_dim = 20;

inline void check_dim(int n, const char* what) {
  if (n < 0 || n > max_cube_dim) throw std::invalid_argument(std::string(what) + ": dimension out of range");
}

// A vertex of the n-cube {0,1}^n, packed with coordinate 1 as the most
// significant bit, so numeric order on codes is lexicographic order on
// tuples.
struct Vertex {
  int dim = 0;
  std::uint32_t bits = 0;

  Vertex() = default;
  Vertex(int n, std::uint32_t b) : dim(n), bits(b) {
    check_dim(n, "Vertex");
    if (n < 32 && (b >> n) != 0) throw std::invalid_argument("Vertex: bits out of range");
  }

  // 1-based coordinate access.
  int coord(int i) const { return static_cast<int>((bits >> (dim - i)) & 1u); }

  static Vertex zeros(int n) { return Vertex(n, 0); }
  static Vertex ones(int n) { return Vertex(n, (n == 0) ? 0u : ((1u << n) - 1u)); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int i = 1; i <= dim; ++i) s[static_cast<std::size_t>(i - 1)] = coord(i) ? '1' : '0';
    return s;
  }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// A morphism {0,1}^m -> {0,1}^n given extensionally as its table of values
// on the 2^m domain vertices, in lexicographic order. Two maps are equal
// exactly when their dimensions and tables agree.
class CubeMap {
 public:
  CubeMap() : m_(0), n_(0), table_(1, 0) {}
  CubeMap(int m, int n, std::vector<std::uint32_t> table) : m_(m), n_(n), table_(std::move(table)) {
    check_dim(m, "CubeMap domain");
    check_dim(n, "CubeMap codomain");
    if (table_.size() != (std::size_t{1} << m_)) throw std::invalid_argument("CubeMap: table size mismatch");
    const std::uint32_t lim = (n_ >= 32) ? 0xffffffffu : ((n_ == 0) ? 0u : ((1u << n_) - 1u));
    for (std::uint32_t v : table_)
      if ((v & ~lim) != 0) throw std::invalid_argument("CubeMap: table entry out of range");
  }

  template <typename Fn>
  static CubeMap from_function(int m, int n, Fn&& fn) {
    check_dim(m, "CubeMap domain");
    std::vector<std::uint32_t> t(std::size_t{1} << m);
    for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = fn(v);
    return CubeMap(m, n, std::move(t));
  }

  static CubeMap identity(int n) {
    return from_function(n, n, [](std::uint32_t v) { return v; });
  }

  int domain_dim() const { return m_; }
  int codomain_dim() const { return n_; }
  std::uint32_t operator()(std::uint32_t v) const { return table_[v]; }
  Vertex apply(const Vertex& v) const { return Vertex(n_, table_[v.bits]); }
  const std::vector<std::uint32_t>& table() const { return table_; }

  bool is_identity() const {
    if (m_ != n_) return false;
    for (std::uint32_t v = 0; v < table_.size(); ++v)
      if (table_[v] != v) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = std::to_string(m_) + "->" + std::to_string(n_) + "[";
    for (std::size_t v = 0; v < table_.size(); ++v) {
      if (v) s += ' ';
      s += Vertex(n_, table_[v]).to_string();
    }
    return s + "]";
  }

  friend bool operator==(const CubeMap& a, const CubeMap& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.table_ == b.table_;
  }
  friend bool operator!=(const CubeMap& a, const CubeMap& b) { return !(a == b); }
  friend bool operator<(const CubeMap& a, const CubeMap& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.table_ < b.table_;
  }

 private:
  int m_, n_;
  std::vector<std::uint32_t> table_;
};

struct CubeMapHash {
  std::size_t operator()(const CubeMap& f) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(f.domain_dim()));
    mix(static_cast<std::size_t>(f.codomain_dim()) << 8);
    for (std::uint32_t v : f.table()) mix(v + 0x9e3779b9u);
    return h;
  }
};

// g after f: compose(g, f) = g . f with f : k -> m and g : m -> n.
inline CubeMap compose(const CubeMap& g, const CubeMap& f) {
  if (f.codomain_dim() != g.domain_dim()) throw std::invalid_argument("compose: dimension mismatch");
  return CubeMap::from_function(f.domain_dim(), g.codomain_dim(),
                                [&](std::uint32_t v) { return g(f(v)); });
}

// Monoidal product: acts as f on the first block of coordinates and as g on
// the second.
inline CubeMap tensor(const CubeMap& f, const CubeMap& g) {
  const int m = f.domain_dim(), p = g.domain_dim();
  const int n = f.codomain_dim(), q = g.codomain_dim();
  check_dim(m + p, "tensor domain");
  check_dim(n + q, "tensor codomain");
  const std::uint32_t lo_mask = (p == 0) ? 0u : ((1u << p) - 1u);
  return CubeMap::from_function(m + p, n + q, [&](std::uint32_t v) {
    const std::uint32_t a = v >> p;
    const std::uint32_t b = v & lo_mask;
    return (f(a) << q) | g(b);
  });
}

inline std::uint32_t insert_bit(std::uint32_t v, int dim_after, int i, std::uint32_t bit) {
  // Insert `bit` as coordinate i of the resulting dim_after-tuple.
  const int low_width = dim_after - i;
  const std::uint32_t low = v & ((low_width == 0) ? 0u : ((1u << low_width) - 1u));
  const std::uint32_t high = v >> low_width;
  return (high << (low_width + 1)) | (bit << low_width) | low;
}

inline std::uint32_t drop_bit(std::uint32_t v, int dim_before, int i) {
  // Delete coordinate i from a dim_before-tuple.
  const int low_width = dim_before - i;
  const std::uint32_t low = v & ((low_width == 0) ? 0u : ((1u << low_width) - 1u));
  const std::uint32_t high = v >> (low_width + 1);
  return (high << low_width) | low;
}

// The generating morphisms of the full cube category, with the paper-facing
// dimension convention: `n` is the codomain dimension for faces, diagonals,
// projections and connections, and the common dimension for transpositions
// and reversals.

// face: {0,1}^{n-1} -> {0,1}^n, inserts eps as coordinate i (1 <= i <= n).
inline CubeMap face_map(int n, int i, int eps) {
  if (n < 1 || i < 1 || i > n || (eps != 0 && eps != 1)) throw std::invalid_argument("face_map: bad index");
  return CubeMap::from_function(n - 1, n, [&](std::uint32_t v) {
    return insert_bit(v, n, i, static_cast<std::uint32_t>(eps));
  });
}

// diagonal: {0,1}^{n-1} -> {0,1}^n, repeats coordinate i (1 <= i <= n-1).
inline CubeMap diagonal_map(int n, int i) {
  if (n < 2 || i < 1 || i > n - 1) throw std::invalid_argument("diagonal_map: bad index");
  return CubeMap::from_function(n - 1, n, [&](std::uint32_t v) {
    const std::uint32_t bit = (v >> (n - 1 - i)) & 1u;
    return insert_bit(v, n, i, bit);
  });
}

// projection: {0,1}^{n+1} -> {0,1}^n, deletes coordinate i (1 <= i <= n+1).
inline CubeMap projection_map(int n, int i) {
  if (n < 0 || i < 1 || i > n + 1) throw std::invalid_argument("projection_map: bad index");
  return CubeMap::from_function(n + 1, n, [&](std::uint32_t v) { return drop_bit(v, n + 1, i); });
}

// connection: {0,1}^{n+1} -> {0,1}^n, replaces coordinates (i, i+1) by their
// meet (eps = 1) or join (eps = 0), for 1 <= i <= n.
inline CubeMap connection_map(int n, int i, int eps) {
  if (n < 1 || i < 1 || i > n || (eps != 0 && eps != 1)) throw std::invalid_argument("connection_map: bad index");
  return CubeMap::from_function(n + 1, n, [&](std::uint32_t v) {
    const std::uint32_t a = (v >> (n + 1 - i)) & 1u;
    const std::uint32_t b = (v >> (n - i)) & 1u;
    const std::uint32_t val = eps ? (a & b) : (a | b);
    std::uint32_t w = drop_bit(v, n + 1, i + 1);  // now coordinate i holds a
    const std::uint32_t low_width = static_cast<std::uint32_t>(n - i);
    w &= ~(1u << low_width);
    w |= val << low_width;
    return w;
  });
}

// transposition: {0,1}^n -> {0,1}^n, swaps coordinates i and i+1.
inline CubeMap transposition_map(int n, int i) {
  if (n < 2 || i < 1 || i > n - 1) throw std::invalid_argument("transposition_map: bad index");
  return CubeMap::from_function(n, n, [&](std::uint32_t v) {
    const int hi = n - i, lo = n - i - 1;
    const std::uint32_t a = (v >> hi) & 1u, b = (v >> lo) & 1u;
    std::uint32_t w = v & ~((1u << hi) | (1u << lo));
    return w | (b << hi) | (a << lo);
  });
}

// reversal: {0,1}^n -> {0,1}^n, flips coordinate i.
inline CubeMap reversal_map(int n, int i) {
  if (n < 1 || i < 1 || i > n) throw std::invalid_argument("reversal_map: bad index");
  return CubeMap::from_function(n, n, [&](std::uint32_t v) { return v ^ (1u << (n - i)); });
}

// The unique map {0,1}^m -> {0,1}^0.
inline CubeMap point_map(int m) {
  return CubeMap::from_function(m, 0, [](std::uint32_t) { return 0u; });
}

enum class GeneratorKind { face, diagonal, projection, connection, transposition, reversal };

inline bool generator_admitted(const Theory& t, GeneratorKind kind, int eps = 0) {
  switch (kind) {
    case GeneratorKind::face:
    case GeneratorKind::projection: return true;
    case GeneratorKind::connection: return eps ? t.has(Symbol::meet) : t.has(Symbol::join);
    case GeneratorKind::transposition: return t.has(Symbol::sigma);
    case GeneratorKind::reversal: return t.has(Symbol::rho);
    case GeneratorKind::diagonal: return t.has(Symbol::delta);
  }
  return false;
}

// Theory-gated generator constructor; throws if the generator class is not
// admitted by the theory or the indices are out of range.
inline CubeMap generator(const Theory& t, GeneratorKind kind, int n, int i, int eps = 0) {
  if (!generator_admitted(t, kind, eps)) throw std::invalid_argument("generator: not admitted by theory");
  switch (kind) {
    case GeneratorKind::face: return face_map(n, i, eps);
    case GeneratorKind::diagonal: return diagonal_map(n, i);
    case GeneratorKind::projection: return projection_map(n, i);
    case GeneratorKind::connection: return connection_map(n, i, eps);
    case GeneratorKind::transposition: return transposition_map(n, i);
    case GeneratorKind::reversal: return reversal_map(n, i);
  }
  throw std::invalid_argument("generator: unknown kind");
}

// Coordinates (i, eps) with f(a)_i = eps for every domain vertex a.
inline std::vector<std::pair<int, int>> fixed_coordinates(const CubeMap& f) {
  std::vector<std::pair<int, int>> out;
  const int n = f.codomain_dim();
  for (int i = 1; i <= n; ++i) {
    const std::uint32_t first = (f(0) >> (n - i)) & 1u;
    bool fixed = true;
    for (std::uint32_t v = 1; v < f.table().size() && fixed; ++v)
      fixed = ((f(v) >> (n - i)) & 1u) == first;
    if (fixed) out.emplace_back(i, static_cast<int>(first));
  }
  return out;
}

inline bool is_active(const CubeMap& f) { return fixed_coordinates(f).empty(); }

// Coordinatewise monotonicity with respect to 0 <= 1.
inline bool is_monotone(const CubeMap& f) {
  const int m = f.domain_dim();
  for (std::uint32_t v = 0; v < f.table().size(); ++v)
    for (int j = 0; j < m; ++j) {
      const std::uint32_t w = v | (1u << j);
      if (w != v && (f(v) & ~f(w)) != 0) return false;
    }
  return true;
}

inline bool is_constant(const CubeMap& f) {
  for (std::uint32_t v = 1; v < f.table().size(); ++v)
    if (f(v) != f(0)) return false;
  return true;
}

}  // namespace cubical
