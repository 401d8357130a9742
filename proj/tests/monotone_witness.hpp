#pragma once

// Test-side oracle: constructs, for any monotone map, an explicit word in
// the poset-theory generators composing to it. Used to validate the poset
// fast path against the generated subcategory without any cap on
// intermediate dimensions.

#include <set>
#include <stdexcept>
#include <vector>

#include "cubical/cube_map.hpp"

namespace testutil {

using cubical::CubeMap;

using Word = std::vector<CubeMap>;  // applied first-to-last

inline CubeMap compose_word(const Word& w, int source_dim) {
  CubeMap acc = CubeMap::identity(source_dim);
  for (const CubeMap& g : w) acc = compose(g, acc);
  return acc;
}

namespace detail {

// Bubble-sort a labelled arrangement into a target order, emitting adjacent
// transpositions at 1-based global coordinates.
inline void emit_permutation(Word& w, int len, int base, std::vector<int>& cur, const std::vector<int>& tgt) {
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    std::size_t p = t;
    while (cur[p] != tgt[t]) ++p;
    for (std::size_t q = p; q > t; --q) {
      std::swap(cur[q - 1], cur[q]);
      w.push_back(cubical::transposition_map(len, base + static_cast<int>(q)));
    }
  }
}

// Duplicate the width-many coordinates at positions base+1 .. base+width
// into `copies` consecutive row-major copies. Returns the new total length.
inline int duplicate_block(Word& w, int len, int base, int width, int copies) {
  if (copies <= 1 || width == 0) return len;
  // Adjacent diagonals give a column-major layout first.
  for (int i = width; i >= 1; --i)
    for (int c = 1; c < copies; ++c) {
      w.push_back(cubical::diagonal_map(len + 1, base + i));
      ++len;
    }
  std::vector<int> cur, tgt;
  for (int i = 1; i <= width; ++i)
    for (int c = 1; c <= copies; ++c) cur.push_back(i * 100 + c);
  for (int c = 1; c <= copies; ++c)
    for (int i = 1; i <= width; ++i) tgt.push_back(i * 100 + c);
  emit_permutation(w, len, base, cur, tgt);
  return len;
}

}  // namespace detail

// An explicit generator word (faces, projections, connections, symmetries,
// diagonals) composing to the given monotone map.
inline Word monotone_generator_word(const CubeMap& f) {
  if (!cubical::is_monotone(f)) throw std::invalid_argument("witness: map is not monotone");
  const int m = f.domain_dim(), n = f.codomain_dim();
  Word w;
  int len = m;

  if (m == 0) {
    const std::uint32_t v = f(0);
    for (int i = 1; i <= n; ++i) w.push_back(cubical::face_map(i, i, static_cast<int>((v >> (n - i)) & 1u)));
    return w;
  }

  // Minimal true points of each coordinate function, as coordinate sets.
  std::vector<std::vector<std::vector<int>>> terms(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::vector<std::uint32_t> mins;
    for (std::uint32_t v = 0; v < f.table().size(); ++v) {
      if (((f(v) >> (n - j)) & 1u) == 0) continue;
      bool minimal = true;
      for (std::uint32_t u : mins)
        if ((u & ~v) == 0) { minimal = false; break; }
      if (minimal) mins.push_back(v);
    }
    for (std::uint32_t v : mins) {
      std::vector<int> supp;
      for (int i = 1; i <= m; ++i)
        if ((v >> (m - i)) & 1u) supp.push_back(i);
      terms[static_cast<std::size_t>(j - 1)].push_back(std::move(supp));
    }
  }

  // Compute output coordinates right to left; each lands just after the
  // input block, so earlier outputs keep shifting right in order.
  for (int j = n; j >= 1; --j) {
    const auto& tj = terms[static_cast<std::size_t>(j - 1)];
    if (tj.empty()) {  // constant 0
      w.push_back(cubical::face_map(len + 1, m + 1, 0));
      ++len;
      continue;
    }
    if (tj.front().empty()) {  // constant 1
      w.push_back(cubical::face_map(len + 1, m + 1, 1));
      ++len;
      continue;
    }
    for (std::size_t t = 0; t < tj.size(); ++t) {
      len = detail::duplicate_block(w, len, 0, m, 2);  // (block)(copy)(...)
      const std::vector<int>& supp = tj[t];
      for (int i = m; i >= 1; --i) {
        if (std::find(supp.begin(), supp.end(), i) != supp.end()) continue;
        w.push_back(cubical::projection_map(len - 1, m + i));
        --len;
      }
      for (std::size_t q = 1; q < supp.size(); ++q) {
        w.push_back(cubical::connection_map(len - 1, m + 1, 1));
        --len;
      }
      if (t > 0) {  // join with the accumulated value sitting right after
        w.push_back(cubical::connection_map(len - 1, m + 1, 0));
        --len;
      }
    }
  }
  // Drop the input block.
  for (int i = 0; i < m; ++i) {
    w.push_back(cubical::projection_map(len - 1, 1));
    --len;
  }
  return w;
}

}  // namespace testutil
