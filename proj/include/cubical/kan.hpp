#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubical/cubical_set.hpp"
#include "cubical/decomp.hpp"

namespace cubical {

// Pre-composition restriction along a theory inclusion: the same cube sets,
// acted on only by the smaller theory's maps.
inline CSet restrict_theory(CSet X, const Theory& A) {
  if (!A.subset_of(X->theory)) throw std::invalid_argument("restrict_theory: not a sub-theory");
  auto out = std::make_shared<CubicalSet>();
  out->theory = A;
  out->truncation = X->truncation;
  out->labels = X->labels;
  CSet inner = std::move(X);
  out->action_fn = [inner](int d, std::size_t i, const CubeMap& f) { return inner->action_fn(d, i, f); };
  return out;
}

// A cube of a left Kan extension in normal form: a non-degenerate seed cube
// of the base together with an active map of the larger theory.
struct NormalPair {
  int seed_dim = 0;
  std::size_t seed = 0;  // index into the extension's seed list
  CubeMap act;

  friend bool operator==(const NormalPair& a, const NormalPair& b) {
    return a.seed_dim == b.seed_dim && a.seed == b.seed && a.act == b.act;
  }
};

// The left Kan extension of a connections-only cubical set along a theory
// inclusion A into B. Cubes in dimension d are pairs of a non-degenerate
// cube of the base and an active B-map into its dimension; the action
// re-normalizes by factoring off faces, pushing them into the seed and
// stripping degeneracies until the remaining map is active again. Every
// round after the first strictly lowers the seed dimension, so the loop
// terminates.
class LeftExtension {
 public:
  LeftExtension(CSet base, const Theory& B) : core_(std::make_shared<Core>()) {
    if (!base->theory.connections_only())
      throw std::invalid_argument("left_extend: base theory admits sigma, rho or delta");
    if (!base->theory.subset_of(B)) throw std::invalid_argument("left_extend: not a theory extension");
    core_->base = std::move(base);
    core_->B = B;
    core_->build();
    finish();
  }

  const CSet& set() const { return set_; }
  const CSet& base() const { return core_->base; }
  const Theory& big_theory() const { return core_->B; }

  // i* of the extension, over the base theory.
  CSet restricted() const { return restrict_theory(set_, core_->base->theory); }

  // The unit: each cube of the base to itself in normal form.
  CSMap unit() const {
    CSMap u{core_->base, restricted(), {}};
    const int D = core_->base->truncation;
    u.level.resize(static_cast<std::size_t>(D) + 1);
    for (int d = 0; d <= D; ++d) {
      u.level[static_cast<std::size_t>(d)].resize(core_->base->size(d));
      for (std::size_t i = 0; i < core_->base->size(d); ++i)
        u.level[static_cast<std::size_t>(d)][i] = core_->normalize(d, i, CubeMap::identity(d));
    }
    return u;
  }

  const std::vector<std::pair<int, std::size_t>>& seeds() const { return core_->seeds; }
  std::size_t seed_position(int dim, std::size_t base_idx) const {
    auto it = core_->seed_pos.find({dim, base_idx});
    if (it == core_->seed_pos.end()) throw std::invalid_argument("seed_position: not a non-degenerate cube");
    return it->second;
  }

  NormalPair pair_of(int d, std::size_t i) const { return core_->pairs[static_cast<std::size_t>(d)][i]; }
  std::size_t index_of(const NormalPair& p) const {
    return core_->index.at(std::make_pair(p.seed, p.act));
  }

  // The cube (base cube) . psi of the extension, in normal form.
  std::size_t normalize(int dim, std::size_t base_idx, const CubeMap& psi) const {
    return core_->normalize(dim, base_idx, psi);
  }

 private:
  struct Core {
    CSet base;
    Theory B;
    std::vector<std::pair<int, std::size_t>> seeds;  // non-degenerate cubes of the base
    std::map<std::pair<int, std::size_t>, std::size_t> seed_pos;
    std::vector<std::vector<NormalPair>> pairs;  // per dimension
    std::map<std::pair<std::size_t, CubeMap>, std::size_t> index;

    void build() {
      const int D = base->truncation;
      seeds = nondegenerate_cubes(base);
      for (std::size_t s = 0; s < seeds.size(); ++s) seed_pos[seeds[s]] = s;
      pairs.resize(static_cast<std::size_t>(D) + 1);
      for (int d = 0; d <= D; ++d)
        for (std::size_t s = 0; s < seeds.size(); ++s)
          for (const CubeMap& act : active_maps(B, d, seeds[s].first)) {
            index[std::make_pair(s, act)] = pairs[static_cast<std::size_t>(d)].size();
            pairs[static_cast<std::size_t>(d)].push_back(NormalPair{seeds[s].first, s, act});
          }
    }

    std::size_t normalize(int dim, std::size_t base_idx, const CubeMap& psi) const {
      int cd = dim;
      std::size_t cur = base_idx;
      CubeMap map = psi;
      while (true) {
        auto aff = active_face_factor(map);
        if (!aff.kappa.empty()) {
          cur = base->action(cd, cur, faces_map(aff.kappa));
          cd = aff.kappa.source_dim();
        }
        CubeEZ ez = ez_cube_factor(base, cd, cur);
        cd = ez.seed_dim;
        cur = ez.seed;
        map = compose(ez.degeneracy, aff.active);
        if (is_active(map)) break;
      }
      auto it = index.find(std::make_pair(seed_pos.at({cd, cur}), map));
      if (it == index.end()) throw std::runtime_error("left_extend: normal form escaped the enumeration");
      return it->second;
    }
  };

  void finish() {
    auto core = core_;
    const int D = core->base->truncation;
    auto set = std::make_shared<CubicalSet>();
    set->theory = core->B;
    set->truncation = D;
    set->labels.resize(static_cast<std::size_t>(D) + 1);
    for (int d = 0; d <= D; ++d)
      for (const NormalPair& p : core->pairs[static_cast<std::size_t>(d)])
        set->labels[static_cast<std::size_t>(d)].push_back(
            core->base->label(p.seed_dim, core->seeds[p.seed].second) + "." + p.act.to_string());
    set->action_fn = [core](int d, std::size_t i, const CubeMap& f) {
      const NormalPair& p = core->pairs[static_cast<std::size_t>(d)][i];
      const auto& [sd, si] = core->seeds[p.seed];
      return core->normalize(sd, si, compose(p.act, f));
    };
    // Generators: the unit images of the seeds.
    for (std::size_t s = 0; s < core->seeds.size(); ++s) {
      const int sd = core->seeds[s].first;
      set->generators.emplace_back(sd, core->index.at(std::make_pair(s, CubeMap::identity(sd))));
    }
    set->gen_expr = [core](int d, std::size_t i) {
      (void)d;
      const NormalPair& p = core->pairs[static_cast<std::size_t>(d)][i];
      return GenExpr{p.seed, p.act};
    };
    set_ = set;
  }

  std::shared_ptr<Core> core_;
  CSet set_;
};

inline LeftExtension left_extend(CSet X, const Theory& B) { return LeftExtension(std::move(X), B); }

// Functorial image of a base map under left extension, re-normalizing seeds.
inline CSMap left_extend_map(const CSMap& f, const LeftExtension& LX, const LeftExtension& LY) {
  CSMap out{LX.set(), LY.set(), {}};
  const int D = LX.set()->truncation;
  out.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.level[static_cast<std::size_t>(d)].resize(LX.set()->size(d));
    for (std::size_t i = 0; i < LX.set()->size(d); ++i) {
      const NormalPair p = LX.pair_of(d, i);
      const auto& [sd, si] = LX.seeds()[p.seed];
      out.level[static_cast<std::size_t>(d)][i] = LY.normalize(sd, f(sd, si), p.act);
    }
  }
  return out;
}

// The comparison between a left-extended representable and the representable
// over the larger theory: (face-composite seed, active map) to the composite.
inline CSMap left_extend_representable_iso(const LeftExtension& L, const Representable& RA,
                                           const Representable& RB) {
  if (L.base() != RA.set()) throw std::invalid_argument("left_extend_representable_iso: base mismatch");
  CSMap out{L.set(), RB.set(), {}};
  const int D = L.set()->truncation;
  out.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.level[static_cast<std::size_t>(d)].resize(L.set()->size(d));
    for (std::size_t i = 0; i < L.set()->size(d); ++i) {
      const NormalPair p = L.pair_of(d, i);
      const auto& [sd, si] = L.seeds()[p.seed];
      out.level[static_cast<std::size_t>(d)][i] = RB.index(compose(RA.cube(sd, si), p.act));
    }
  }
  return out;
}

// The block transposition exchanging the first a and last b coordinates.
inline CubeMap block_swap(int a, int b) {
  const std::uint32_t lo = (b == 0) ? 0u : ((1u << b) - 1u);
  return CubeMap::from_function(a + b, b + a,
                                [a, lo, b](std::uint32_t v) { return ((v & lo) << a) | (v >> b); });
}

// ---------------------------------------------------------------------------
// Geometric vs cartesian product comparison

struct ProductComparison {
  CSet X, Y;
  GeometricProduct geo;
  CartesianProduct cart;
  CSMap geo_to_cart;
};

// The natural map X (x) Y -> X x Y induced by the two projections, sending
// (x (x) y) . phi to the pair of deleted-coordinate actions.
inline ProductComparison compare_products(CSet X, CSet Y) {
  ProductComparison out{X, Y, GeometricProduct(X, Y), cartesian_product(X, Y), {}};
  const int D = X->truncation;
  out.geo_to_cart.src = out.geo.set();
  out.geo_to_cart.tgt = out.cart.set;
  out.geo_to_cart.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.geo_to_cart.level[static_cast<std::size_t>(d)].resize(out.geo.set()->size(d));
    for (std::size_t i = 0; i < out.geo.set()->size(d); ++i) {
      const auto [gx, gy, phi] = out.geo.cell_rep(d, i);
      const auto [a, xi] = X->generators[gx];
      const auto [b, yi] = Y->generators[gy];
      const std::size_t px = X->action(a, xi, compose(last_deletion(a, b), phi));
      const std::size_t py = Y->action(b, yi, compose(front_deletion(a, b), phi));
      out.geo_to_cart.level[static_cast<std::size_t>(d)][i] = out.cart.pair_index(d, px, py);
    }
  }
  return out;
}

struct ExtendedComparison {
  ProductComparison base;
  std::shared_ptr<LeftExtension> ext;  // i_!(X (x) Y) over B
  CSet restricted;                     // i* of it, over the base theory
  CSMap unit;                          // X (x) Y -> restricted
  CSMap cart_to_extended;              // X x Y -> restricted
};

// The natural map X x Y -> i* i_!(X (x) Y) sending a pair of k-cubes (u, v)
// to (u (x) v) . D_k, computed in normal form by pushing the EZ degeneracies
// of u and v through the long diagonal.
inline ExtendedComparison compare_products_extended(CSet X, CSet Y, const Theory& B) {
  if (!(B.has(Symbol::sigma) && B.has(Symbol::delta)))
    throw std::invalid_argument("compare_products_extended: B must admit sigma and delta");
  ExtendedComparison out{compare_products(X, Y), nullptr, nullptr, {}, {}};
  out.ext = std::make_shared<LeftExtension>(out.base.geo.set(), B);
  out.restricted = out.ext->restricted();
  out.unit = out.ext->unit();
  out.unit.tgt = out.restricted;

  const int D = X->truncation;
  out.cart_to_extended.src = out.base.cart.set;
  out.cart_to_extended.tgt = out.restricted;
  out.cart_to_extended.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.cart_to_extended.level[static_cast<std::size_t>(d)].resize(out.base.cart.set->size(d));
    for (std::size_t idx = 0; idx < out.base.cart.set->size(d); ++idx) {
      const auto [u, v] = out.base.cart.components(d, idx);
      const CubeEZ eu = ez_cube_factor(X, d, u);
      const CubeEZ ev = ez_cube_factor(Y, d, v);
      const std::size_t cell = out.base.geo.pairing(eu.seed_dim, eu.seed, ev.seed_dim, ev.seed);
      const CubeMap psi = compose(tensor(eu.degeneracy, ev.degeneracy), long_diagonal(d));
      out.cart_to_extended.level[static_cast<std::size_t>(d)][idx] =
          out.ext->normalize(eu.seed_dim + ev.seed_dim, cell, psi);
    }
  }
  return out;
}

// Membership in the image of box^m_A x box^n_A inside the restricted
// representable: both coordinate-block deletions land in the small theory.
inline bool cartesian_image_member(const CubeMap& phi, int m, int n, const Theory& A) {
  if (phi.codomain_dim() != m + n) throw std::invalid_argument("cartesian_image_member: dimension mismatch");
  return is_member(A, compose(front_deletion(m, n), phi)) && is_member(A, compose(last_deletion(m, n), phi));
}

// ---------------------------------------------------------------------------
// Monoidality and the symmetry zigzag

// The comparison i_!(X (x) Y) -> i_!X (x) i_!Y on cells: a seed cell
// (x (x) y) . chi goes to the pairing of the unit images, acted by chi.
struct MonoidalityIso {
  std::shared_ptr<LeftExtension> ext_product;   // i_!(X (x) Y)
  std::shared_ptr<LeftExtension> ext_x, ext_y;  // i_!X, i_!Y
  std::shared_ptr<GeometricProduct> product_of_ext;
  CSMap iso;
};

inline MonoidalityIso monoidality_iso(const GeometricProduct& g, const Theory& B) {
  MonoidalityIso out;
  out.ext_product = std::make_shared<LeftExtension>(g.set(), B);
  out.ext_x = std::make_shared<LeftExtension>(g.factor_x(), B);
  out.ext_y = std::make_shared<LeftExtension>(g.factor_y(), B);
  out.product_of_ext = std::make_shared<GeometricProduct>(out.ext_x->set(), out.ext_y->set());

  // Generators of the factors must be non-degenerate, so their unit images
  // are generator cells of the extended product.
  auto gen_to_seed = [](const CSet& Z, const LeftExtension& LZ) {
    std::vector<std::size_t> map;
    for (const auto& [d, i] : Z->generators) map.push_back(LZ.seed_position(d, i));
    return map;
  };
  const auto sx = gen_to_seed(g.factor_x(), *out.ext_x);
  const auto sy = gen_to_seed(g.factor_y(), *out.ext_y);

  const int D = g.set()->truncation;
  out.iso.src = out.ext_product->set();
  out.iso.tgt = out.product_of_ext->set();
  out.iso.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    out.iso.level[static_cast<std::size_t>(d)].resize(out.ext_product->set()->size(d));
    for (std::size_t i = 0; i < out.ext_product->set()->size(d); ++i) {
      const NormalPair p = out.ext_product->pair_of(d, i);
      const auto& [sd, si] = out.ext_product->seeds()[p.seed];
      const GenExpr cell = g.set()->gen_expr(sd, si);
      const std::size_t gy_count = g.factor_y()->generators.size();
      const std::size_t gx = cell.gen / gy_count, gy = cell.gen % gy_count;
      out.iso.level[static_cast<std::size_t>(d)][i] =
          out.product_of_ext->cell_index(sx[gx], sy[gy], compose(cell.via, p.act));
    }
  }
  return out;
}

struct SymmetryZigzag {
  std::shared_ptr<GeometricProduct> xy, yx;  // over the base theory
  std::shared_ptr<LeftExtension> ext_xy, ext_yx;
  CSMap unit_xy, unit_yx;  // the two monomorphism legs
  CSMap iso;               // i* i_!(X (x) Y) -> i* i_!(Y (x) X)
};

// The zigzag relating X (x) Y and Y (x) X through a theory with symmetries:
// both legs are units of the extension adjunction, and the middle
// isomorphism is monoidality conjugated with the block transposition
// symmetry of the extended product.
inline SymmetryZigzag symmetry_zigzag(CSet X, CSet Y, const Theory& B) {
  if (!B.has(Symbol::sigma) || !(B.has(Symbol::meet) || B.has(Symbol::join)))
    throw std::invalid_argument("symmetry_zigzag: B must admit sigma and a connection");
  SymmetryZigzag out;
  out.xy = std::make_shared<GeometricProduct>(X, Y);
  out.yx = std::make_shared<GeometricProduct>(Y, X);
  MonoidalityIso m1 = monoidality_iso(*out.xy, B);
  MonoidalityIso m2 = monoidality_iso(*out.yx, B);
  out.ext_xy = m1.ext_product;
  out.ext_yx = m2.ext_product;
  out.unit_xy = out.ext_xy->unit();
  out.unit_yx = out.ext_yx->unit();

  // swap: i_!X (x) i_!Y -> i_!Y (x) i_!X on cells
  CSMap swap{m1.product_of_ext->set(), m2.product_of_ext->set(), {}};
  const int D = X->truncation;
  swap.level.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d) {
    swap.level[static_cast<std::size_t>(d)].resize(m1.product_of_ext->set()->size(d));
    for (std::size_t i = 0; i < m1.product_of_ext->set()->size(d); ++i) {
      const auto [gx, gy, phi] = m1.product_of_ext->cell_rep(d, i);
      const int a = m1.ext_x->set()->generators[gx].first;
      const int b = m1.ext_y->set()->generators[gy].first;
      swap.level[static_cast<std::size_t>(d)][i] =
          m2.product_of_ext->cell_index(gy, gx, compose(block_swap(a, b), phi));
    }
  }
  out.iso = compose(m2.iso.inverse(), compose(swap, m1.iso));
  out.iso.src = out.ext_xy->set();
  out.iso.tgt = out.ext_yx->set();
  return out;
}

}  // namespace cubical
