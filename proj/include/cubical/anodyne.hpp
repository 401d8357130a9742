#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cubical/cubical_set.hpp"
#include "cubical/decomp.hpp"
#include "cubical/kan.hpp"

namespace cubical {

struct SubcomplexSpec {
  enum class Kind { unit, cartesian, full };
  Kind kind = Kind::full;
  int m = -1;  // cartesian split: box^m x box^{n-m}

  std::string to_string() const {
    switch (kind) {
      case Kind::unit: return "unit";
      case Kind::full: return "full";
      case Kind::cartesian: return "cartesian:" + std::to_string(m);
    }
    return "?";
  }
  static SubcomplexSpec parse(const std::string& s) {
    if (s == "unit") return {Kind::unit, -1};
    if (s == "full") return {Kind::full, -1};
    if (s.rfind("cartesian:", 0) == 0) {
      SubcomplexSpec out{Kind::cartesian, -1};
      out.m = std::stoi(s.substr(10));
      return out;
    }
    throw std::invalid_argument("unknown subcomplex spec: " + s);
  }
  friend bool operator==(const SubcomplexSpec& a, const SubcomplexSpec& b) {
    return a.kind == b.kind && (a.kind != Kind::cartesian || a.m == b.m);
  }
};

// One open-box filling of the filtration: at stage (i, j, k) the interior
// faces(kappa) . N_k(phi) is filled along its (j+2-k, 1)-open box, adjoining
// the missing face faces(kappa) . (phi (x) id_k).
struct FillingStep {
  int i = 0, j = 0, k = 0;
  FaceList kappa;
  CubeMap phi;
  CubeMap interior;
  std::pair<int, int> missing_face;
  bool inner = false;
};

inline int missing_face_side(Flavor f) { return f == Flavor::meet ? 1 : 0; }

struct FillingCertificate {
  Theory A, B;
  Flavor flavor = Flavor::meet;
  int n = 0, D = 0;
  SubcomplexSpec source, target;
  std::vector<FillingStep> steps;
  bool all_inner = false;
};

// The ambient restricted representable i* box^n_B together with mask-based
// subcomplex bookkeeping over the small theory's action.
class AnodyneAmbient {
 public:
  using Mask = std::vector<std::vector<char>>;

  AnodyneAmbient(const Theory& A, const Theory& B, int n, int D, Flavor flavor = Flavor::meet)
      : A_(A), B_(B), n_(n), D_(D), flavor_(flavor), rep_(B, n, D) {
    if (!A.subset_of(B)) throw std::invalid_argument("AnodyneAmbient: A must be a sub-theory of B");
    if (!A.connections_only()) throw std::invalid_argument("AnodyneAmbient: A must be connections-only");
    if (!(flavor == Flavor::meet ? A.has(Symbol::meet) : A.has(Symbol::join)))
      throw std::invalid_argument("AnodyneAmbient: flavor symbol missing from A");
  }

  const Theory& small_theory() const { return A_; }
  const Theory& big_theory() const { return B_; }
  int n() const { return n_; }
  int truncation() const { return D_; }
  Flavor flavor() const { return flavor_; }
  const Representable& rep() const { return rep_; }

  Mask empty_mask() const {
    Mask m(static_cast<std::size_t>(D_) + 1);
    for (int d = 0; d <= D_; ++d) m[static_cast<std::size_t>(d)].assign(rep_.set()->size(d), 0);
    return m;
  }

  Mask subcomplex(const SubcomplexSpec& spec) const {
    Mask m = empty_mask();
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < rep_.set()->size(d); ++i) {
        const CubeMap& f = rep_.cube(d, i);
        bool in = false;
        switch (spec.kind) {
          case SubcomplexSpec::Kind::full: in = true; break;
          case SubcomplexSpec::Kind::unit: in = is_member(A_, f); break;
          case SubcomplexSpec::Kind::cartesian:
            if (spec.m < 0 || spec.m > n_) throw std::invalid_argument("cartesian spec: bad split");
            in = cartesian_image_member(f, spec.m, n_ - spec.m, A_);
            break;
        }
        if (in) m[static_cast<std::size_t>(d)][i] = 1;
      }
    return m;
  }

  bool contains(const Mask& m, const CubeMap& f) const {
    if (!rep_.contains(f)) return false;
    return m[static_cast<std::size_t>(f.domain_dim())][rep_.index(f)] != 0;
  }

  bool mask_subset(const Mask& a, const Mask& b) const {
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < a[static_cast<std::size_t>(d)].size(); ++i)
        if (a[static_cast<std::size_t>(d)][i] && !b[static_cast<std::size_t>(d)][i]) return false;
    return true;
  }

  bool mask_closed(const Mask& m) const {
    for (int d = 0; d <= D_; ++d)
      for (std::size_t i = 0; i < m[static_cast<std::size_t>(d)].size(); ++i) {
        if (!m[static_cast<std::size_t>(d)][i]) continue;
        for (int e = 0; e <= D_; ++e)
          for (const CubeMap& g : enumerate_hom(A_, e, d))
            if (!contains(m, compose(rep_.cube(d, i), g))) return false;
      }
    return true;
  }

  // Adjoin a cube and its whole orbit under the small theory's action.
  void add_orbit(Mask& m, const CubeMap& f) const {
    std::vector<CubeMap> work{f};
    while (!work.empty()) {
      CubeMap cur = std::move(work.back());
      work.pop_back();
      const int d = cur.domain_dim();
      auto& row = m[static_cast<std::size_t>(d)];
      const std::size_t idx = rep_.index(cur);
      if (row[idx]) continue;
      row[idx] = 1;
      for (int e = 0; e <= D_; ++e)
        for (const CubeMap& g : enumerate_hom(A_, e, d)) work.push_back(compose(cur, g));
    }
  }

  // Whether the map is degenerate as a cube of the restriction, i.e.
  // factors on the right through a degeneracy of the small theory.
  bool degenerate_over_A(const CubeMap& f) const { return factors_through_degeneracy(A_, f); }

 private:
  Theory A_, B_;
  int n_, D_;
  Flavor flavor_;
  Representable rep_;
};

struct DecompositionCounterexample {
  FaceList kappa;
  CubeMap phi;
  int k = 0;
};

// Checks the decomposition-closure condition: the mask contains the unit
// image, and passing from faces(kappa) . (phi (x) id_k) to
// faces(kappa) . N_k(phi) stays inside whenever the interior dimension fits
// the truncation.
inline std::optional<DecompositionCounterexample> decomposition_closed_counterexample(
    const AnodyneAmbient& amb, const AnodyneAmbient::Mask& m) {
  const int D = amb.truncation();
  for (int d = 0; d <= D; ++d)
    for (const CubeMap& f : enumerate_hom(amb.small_theory(), d, amb.n()))
      if (!amb.contains(m, f)) return DecompositionCounterexample{FaceList({}, amb.n()), f, -1};
  for (int d = 0; d + 1 <= D; ++d)
    for (std::size_t i = 0; i < amb.rep().set()->size(d); ++i) {
      if (!m[static_cast<std::size_t>(d)][i]) continue;
      const CubeMap& f = amb.rep().cube(d, i);
      auto aff = active_face_factor(f);
      if (aff.active.codomain_dim() == 0) continue;  // no connection slot to fill
      const int tail = tail_length(aff.active);
      for (int k = 0; k <= tail; ++k) {
        const CubeMap phi = strip_tail(aff.active, k);
        if (phi.codomain_dim() < 1) continue;
        const CubeMap interior =
            compose(faces_map(aff.kappa), standard_decomposition(phi, k, amb.flavor()));
        if (!amb.contains(m, interior)) return DecompositionCounterexample{aff.kappa, phi, k};
      }
    }
  return std::nullopt;
}

inline bool is_decomposition_closed(const AnodyneAmbient& amb, const AnodyneAmbient::Mask& m) {
  return !decomposition_closed_counterexample(amb, m).has_value();
}

struct CertifyResult {
  FillingCertificate certificate;
  // Target cubes at the truncation dimension the filtration cannot reach.
  std::vector<std::string> uncovered_top;
};

namespace detail {

// phi = N_0(phi') for some phi'? Reconstruct phi' from the top face.
inline bool is_standard_decomposition_cube(const CubeMap& phi, Flavor flavor) {
  const int m1 = phi.domain_dim();
  if (m1 < 1 || phi.codomain_dim() < 1) return false;
  const CubeMap cand = compose(phi, face_map(m1, m1, 1));
  return standard_decomposition(cand, 0, flavor) == phi;
}

}  // namespace detail

// The open-box filling filtration: sweeps base dimension, then cube
// dimension, then tail length, emitting one step per cube of the target not
// yet present in the accumulating subcomplex. The redundancy cases of the
// filtration are asserted, not used for skipping: whenever one holds, the
// cube must already be accumulated.
inline CertifyResult certify(const AnodyneAmbient& amb, const SubcomplexSpec& source,
                             const SubcomplexSpec& target) {
  const int n = amb.n(), D = amb.truncation();
  AnodyneAmbient::Mask src = amb.subcomplex(source);
  AnodyneAmbient::Mask tgt = amb.subcomplex(target);
  if (!amb.mask_subset(src, tgt)) throw std::invalid_argument("certify: source not contained in target");
  if (!is_decomposition_closed(amb, src))
    throw std::invalid_argument("certify: source is not decomposition-closed");
  if (!is_decomposition_closed(amb, tgt))
    throw std::invalid_argument("certify: target is not decomposition-closed");

  CertifyResult out;
  out.certificate.A = amb.small_theory();
  out.certificate.B = amb.big_theory();
  out.certificate.flavor = amb.flavor();
  out.certificate.n = n;
  out.certificate.D = D;
  out.certificate.source = source;
  out.certificate.target = target;

  AnodyneAmbient::Mask acc = src;
  for (int i = 0; i <= n - 1; ++i)
    for (int j = 0; j <= D - 2; ++j)
      for (int k = std::min(j, i + 1); k >= 0; --k) {
        std::vector<FillingStep> stage;
        for (const FaceList& kappa : enumerate_face_lists(i + 1, n))
          for (const CubeMap& phi : active_maps(amb.big_theory(), j + 1 - k, i + 1 - k)) {
            const CubeMap body = tensor(phi, CubeMap::identity(k));
            const CubeMap cube = compose(faces_map(kappa), body);
            if (!amb.contains(tgt, cube)) continue;
            if (amb.contains(acc, cube)) continue;
            // Redundancy cases would contradict absence from the
            // accumulated complex.
            if (amb.degenerate_over_A(body))
              throw std::runtime_error("certify: degenerate candidate escaped the accumulation");
            if (tail_length(phi) >= 1)
              throw std::runtime_error("certify: positive-tail candidate escaped the accumulation");
            if (detail::is_standard_decomposition_cube(phi, amb.flavor()))
              throw std::runtime_error("certify: decomposition-cube candidate escaped the accumulation");
            FillingStep step;
            step.i = i;
            step.j = j;
            step.k = k;
            step.kappa = kappa;
            step.phi = phi;
            step.interior = compose(faces_map(kappa), standard_decomposition(phi, k, amb.flavor()));
            step.missing_face = {j + 2 - k, missing_face_side(amb.flavor())};
            // Open-box availability in the current complex.
            for (int q = 1; q <= j + 2; ++q)
              for (int eps = 0; eps <= 1; ++eps) {
                if (q == step.missing_face.first && eps == step.missing_face.second) continue;
                if (!amb.contains(acc, compose(step.interior, face_map(j + 2, q, eps))))
                  throw std::runtime_error("certify: open box incomplete at stage");
              }
            step.inner = is_constant(
                compose(step.interior, critical_edge(j + 2, j + 2 - k, missing_face_side(amb.flavor()))));
            stage.push_back(std::move(step));
          }
        std::sort(stage.begin(), stage.end(), [](const FillingStep& a, const FillingStep& b) {
          if (!(a.kappa == b.kappa)) return a.kappa < b.kappa;
          return a.phi < b.phi;
        });
        for (const FillingStep& s : stage) amb.add_orbit(acc, s.interior);
        for (FillingStep& s : stage) out.certificate.steps.push_back(std::move(s));
      }

  out.certificate.all_inner = true;
  for (const FillingStep& s : out.certificate.steps)
    if (!s.inner) out.certificate.all_inner = false;

  for (int d = 0; d <= D; ++d)
    for (std::size_t i = 0; i < amb.rep().set()->size(d); ++i) {
      if (!tgt[static_cast<std::size_t>(d)][i] || acc[static_cast<std::size_t>(d)][i]) continue;
      if (d <= D - 1)
        throw std::runtime_error("certify: truncation too small, uncovered cube at dimension " +
                                 std::to_string(d));
      out.uncovered_top.push_back(amb.rep().set()->label(d, i));
    }
  return out;
}

struct VerifyReport {
  bool pass = false;
  int failed_step = -1;             // index into steps; -1 for global failures
  std::string check;                // "structure", "a".."e", "coverage", "inner-flag"
  std::string detail;
};

// Replays a certificate from scratch, trusting nothing from generation:
// recomputes the ambient and the source and target masks, validates every
// step's tables, open box, freshness, degeneracy status and inner flag, and
// finally checks coverage of the target below the truncation dimension.
inline VerifyReport verify(const FillingCertificate& cert) {
  VerifyReport rep;
  auto fail = [&rep](int step, const std::string& check, const std::string& detail) {
    rep.pass = false;
    rep.failed_step = step;
    rep.check = check;
    rep.detail = detail;
    return rep;
  };

  if (cert.n < 0 || cert.D < 0 || !cert.A.subset_of(cert.B) || !cert.A.connections_only())
    return fail(-1, "structure", "bad theories or dimensions");
  if (cert.flavor == Flavor::meet ? !cert.A.has(Symbol::meet) : !cert.A.has(Symbol::join))
    return fail(-1, "structure", "flavor symbol missing from theory A");
  AnodyneAmbient amb(cert.A, cert.B, cert.n, cert.D, cert.flavor);
  AnodyneAmbient::Mask current = amb.subcomplex(cert.source);
  AnodyneAmbient::Mask tgt = amb.subcomplex(cert.target);
  if (!amb.mask_subset(current, tgt)) return fail(-1, "structure", "source not contained in target");

  std::tuple<int, int, int> prev{-1, -1, -1};
  bool seen_inner = true;
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const FillingStep& st = cert.steps[s];
    const int si = static_cast<int>(s);
    // stage ordering: lexicographic in (i, j, descending k)
    const std::tuple<int, int, int> stage{st.i, st.j, -st.k};
    if (stage < prev) return fail(si, "structure", "steps out of stage order");
    prev = stage;
    if (st.i < 0 || st.i > cert.n - 1 || st.j < 0 || st.j > cert.D - 2 || st.k < 0 || st.k > st.j)
      return fail(si, "structure", "stage indices out of range");
    try {
      st.kappa.validate();
    } catch (const std::exception& e) {
      return fail(si, "structure", e.what());
    }
    if (st.kappa.target_dim != cert.n || st.kappa.source_dim() != st.i + 1)
      return fail(si, "structure", "kappa dimensions inconsistent with stage");
    if (st.phi.domain_dim() != st.j + 1 - st.k || st.phi.codomain_dim() != st.i + 1 - st.k)
      return fail(si, "structure", "phi dimensions inconsistent with stage");
    if (!is_active(st.phi)) return fail(si, "structure", "phi is not active");
    if (!is_member(cert.B, st.phi)) return fail(si, "structure", "phi is not a map of theory B");
    if (st.missing_face != std::make_pair(st.j + 2 - st.k, missing_face_side(cert.flavor)))
      return fail(si, "structure", "missing face is not the distinguished one");

    // (a) the interior is the decomposition cube of (kappa, phi, k)
    const CubeMap interior =
        compose(faces_map(st.kappa), standard_decomposition(st.phi, st.k, cert.flavor));
    if (!(st.interior == interior)) return fail(si, "a", "interior table mismatch");
    if (!amb.rep().contains(interior)) return fail(si, "a", "interior is not a cube of the ambient");

    // (b) open box present
    for (int q = 1; q <= st.j + 2; ++q)
      for (int eps = 0; eps <= 1; ++eps) {
        if (q == st.missing_face.first && eps == st.missing_face.second) continue;
        if (!amb.contains(current, compose(interior, face_map(st.j + 2, q, eps))))
          return fail(si, "b", "open-box face missing from the current complex");
      }

    // (c) interior and missing face are fresh and non-degenerate
    const CubeMap missing =
        compose(interior, face_map(st.j + 2, st.missing_face.first, st.missing_face.second));
    if (amb.contains(current, interior)) return fail(si, "c", "interior already present");
    if (amb.contains(current, missing)) return fail(si, "c", "missing face already present");
    if (!amb.rep().contains(missing)) return fail(si, "c", "missing face is not a cube of the ambient");
    if (!amb.contains(tgt, missing)) return fail(si, "c", "missing face outside the target");
    if (!amb.contains(tgt, interior)) return fail(si, "c", "interior outside the target");
    if (amb.degenerate_over_A(interior)) return fail(si, "c", "interior is degenerate");
    if (amb.degenerate_over_A(missing)) return fail(si, "c", "missing face is degenerate");

    // (d) the inner flag matches the critical-edge test
    const bool inner = is_constant(
        compose(interior, critical_edge(st.j + 2, st.missing_face.first, st.missing_face.second)));
    if (inner != st.inner) return fail(si, "d", "inner flag mismatch");
    seen_inner = seen_inner && inner;

    amb.add_orbit(current, interior);
  }

  if (cert.all_inner != seen_inner) return fail(-1, "inner-flag", "allInner flag mismatch");

  // (e) coverage below the truncation dimension
  for (int d = 0; d <= cert.D - 1; ++d)
    for (std::size_t i = 0; i < amb.rep().set()->size(d); ++i)
      if (tgt[static_cast<std::size_t>(d)][i] && !current[static_cast<std::size_t>(d)][i])
        return fail(-1, "e", "uncovered target cube " + amb.rep().set()->label(d, i));

  rep.pass = true;
  rep.check.clear();
  rep.detail = "ok: " + std::to_string(cert.steps.size()) + " steps";
  return rep;
}

}  // namespace cubical
