#pragma once

// Univariate zero-locus predicates. Exact backend: Sturm chains and Cauchy
// indices over the rationals. Float backend: certified root disks with the
// tie convention that borderline signs resolve into closed conditions.

#include <optional>

#include "preserver/errors.hpp"
#include "preserver/mobius.hpp"
#include "preserver/poly.hpp"
#include "preserver/roots.hpp"
#include "preserver/sturm.hpp"

namespace preserver {

struct LocusVerdict {
  bool yes = false;
  std::optional<CD> witness;  // a root inside the forbidden locus when yes = false
  Backend backend = Backend::exact;
};

enum class HalfPlane { upper, lower };
enum class WronskianSign { nonpositive, nonnegative, mixed, identically_zero };
enum class Pencil { f_ll_g, g_ll_f, proportional, neither };

struct PencilRelation {
  Pencil relation = Pencil::neither;
  bool degenerate = false;  // a zero polynomial was involved; both orders hold
};

namespace detail {

// Root with the largest imaginary part; sorted order breaks ties.
inline CD max_im_root(const RootSet& rs) {
  CD best = rs.roots.front().value;
  for (const auto& r : rs.roots)
    if (r.value.im > best.im) best = r.value;
  return best;
}
inline CD max_abs_im_root(const RootSet& rs) {
  CD best = rs.roots.front().value;
  for (const auto& r : rs.roots)
    if (std::abs(r.value.im) > std::abs(best.im)) best = r.value;
  return best;
}

}  // namespace detail

inline LocusVerdict is_hyperbolic(const Poly1<Rat>& f, bool strict = false) {
  if (f.is_zero()) throw ZeroPolynomialError("is_hyperbolic: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::exact;
  if (f.degree() == 0) {
    v.yes = true;
    return v;
  }
  RealRootCount rc = real_root_count_line(f);
  bool all_real = rc.with_multiplicity == f.degree();
  v.yes = strict ? (all_real && rc.distinct == f.degree()) : all_real;
  if (!v.yes && !all_real) v.witness = detail::max_abs_im_root(all_roots(f));
  if (!v.yes && all_real) v.witness = std::nullopt;  // strict failure: repeated real root
  return v;
}

inline LocusVerdict is_hyperbolic(const Poly1<double>& f, bool strict = false,
                                  const Tolerance& tol = {}) {
  if (f.is_zero()) throw ZeroPolynomialError("is_hyperbolic: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::floating;
  if (f.degree() == 0) {
    v.yes = true;
    return v;
  }
  RootSet rs = all_roots(f, tol);
  v.yes = true;
  for (const auto& r : rs.roots) {
    double slack = tol.eps * (1.0 + std::abs(r.value.im)) + r.radius;
    if (std::abs(r.value.im) > slack) {
      v.yes = false;
      v.witness = r.value;
      break;
    }
    if (strict && r.multiplicity > 1) v.yes = false;
  }
  return v;
}

inline LocusVerdict is_stable1(const Poly1<CQ>& h, HalfPlane half = HalfPlane::upper,
                               bool strict = false) {
  if (h.is_zero()) throw ZeroPolynomialError("is_stable1: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::exact;
  if (h.degree() == 0) {
    v.yes = true;
    return v;
  }
  HalfPlaneCount hc = halfplane_root_count(h);
  int forbidden = (half == HalfPlane::upper) ? hc.upper : hc.lower;
  v.yes = (forbidden == 0) && (!strict || hc.real_mult == 0);
  if (!v.yes) {
    RootSet rs = all_roots(h);
    CD best = rs.roots.front().value;
    for (const auto& r : rs.roots) {
      double im = (half == HalfPlane::upper) ? r.value.im : -r.value.im;
      double bi = (half == HalfPlane::upper) ? best.im : -best.im;
      if (im > bi) best = r.value;
    }
    v.witness = best;
  }
  return v;
}

inline LocusVerdict is_stable1(const Poly1<CD>& h, HalfPlane half = HalfPlane::upper,
                               bool strict = false, const Tolerance& tol = {}) {
  if (h.is_zero()) throw ZeroPolynomialError("is_stable1: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::floating;
  if (h.degree() == 0) {
    v.yes = true;
    return v;
  }
  RootSet rs = all_roots(h, tol);
  v.yes = true;
  for (const auto& r : rs.roots) {
    double im = (half == HalfPlane::upper) ? r.value.im : -r.value.im;
    double slack = tol.eps * (1.0 + std::abs(im)) + r.radius;
    bool violates = strict ? (im > -slack) : (im > slack);
    if (violates) {
      v.yes = false;
      if (!v.witness || im > ((half == HalfPlane::upper) ? v.witness->im : -v.witness->im))
        v.witness = r.value;
    }
  }
  return v;
}

inline LocusVerdict is_stable1(const Poly1<Rat>& h, HalfPlane half = HalfPlane::upper,
                               bool strict = false) {
  return is_stable1(complexify(h), half, strict);
}
inline LocusVerdict is_stable1(const Poly1<double>& h, HalfPlane half = HalfPlane::upper,
                               bool strict = false, const Tolerance& tol = {}) {
  std::vector<CD> c;
  for (double v : h.coeffs()) c.emplace_back(v, 0.0);
  return is_stable1(Poly1<CD>(std::move(c)), half, strict, tol);
}

struct DomainRootCount {
  int in_C = 0;
  int on_boundary = 0;
  int in_Cr = 0;
};

// Exact location of every root of f relative to C = Phi^{-1}(H): conjugate
// by the inverse map with weight deg f, so roots transport to Phi(roots)
// and the degree drop counts roots at the pole (which lies on dC).
inline DomainRootCount domain_root_count(const Poly1<CQ>& f, const Mobius<Rat>& m) {
  if (f.is_zero()) throw ZeroPolynomialError("domain_root_count: zero polynomial");
  DomainRootCount out;
  int n = f.degree();
  if (n == 0) return out;
  Poly1<CQ> g = conjugate_poly(m.inverse(), n, f);
  int pole_mult = n - std::max(g.degree(), 0);
  HalfPlaneCount hc = halfplane_root_count(g);
  out.in_C = hc.upper;
  out.on_boundary = hc.real_mult + pole_mult;
  out.in_Cr = hc.lower;
  return out;
}

inline LocusVerdict is_domain_stable1(const Poly1<CQ>& f, const CircularDomain<Rat>& domain) {
  if (f.is_zero()) throw ZeroPolynomialError("is_domain_stable1: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::exact;
  if (f.degree() == 0) {
    v.yes = true;
    return v;
  }
  DomainRootCount rc = domain_root_count(f, domain.mobius());
  int forbidden = 0;
  switch (domain.view()) {
    case DomainView::open_C:
      forbidden = rc.in_C;
      break;
    case DomainView::boundary:
      forbidden = rc.on_boundary;
      break;
    case DomainView::closed_complement:
      forbidden = rc.on_boundary + rc.in_Cr;
      break;
    case DomainView::reversed:
      forbidden = rc.in_Cr;
      break;
  }
  v.yes = (forbidden == 0);
  if (!v.yes) {
    // numeric witness: the root whose quadric value best matches the view
    Mobius<double> mf = to_float(domain.mobius());
    RootSet rs = all_roots(f);
    std::optional<CD> best;
    double best_score = 0;
    for (const auto& r : rs.roots) {
      double q = mf.q_value(r.value);
      double score = 0;
      switch (domain.view()) {
        case DomainView::open_C:
          score = q;
          break;
        case DomainView::boundary:
          score = -std::abs(q);
          break;
        case DomainView::closed_complement:
        case DomainView::reversed:
          score = -q;
          break;
      }
      if (!best || score > best_score) {
        best = r.value;
        best_score = score;
      }
    }
    v.witness = best;
  }
  return v;
}

inline LocusVerdict is_domain_stable1(const Poly1<CD>& f, const CircularDomain<double>& domain,
                                      const Tolerance& tol = {}) {
  if (f.is_zero()) throw ZeroPolynomialError("is_domain_stable1: zero polynomial");
  LocusVerdict v;
  v.backend = Backend::floating;
  if (f.degree() == 0) {
    v.yes = true;
    return v;
  }
  RootSet rs = all_roots(f, tol);
  double scale = domain.mobius().q_scale();
  v.yes = true;
  for (const auto& r : rs.roots) {
    double q = domain.mobius().q_value(r.value);
    double slack = tol.eps * scale * (1.0 + std::norm(to_std_complex(r.value)));
    bool forbidden = false;
    switch (domain.view()) {
      case DomainView::open_C:
        forbidden = q > slack;
        break;
      case DomainView::boundary:
        forbidden = std::abs(q) <= slack;
        break;
      case DomainView::closed_complement:
        forbidden = q <= slack;
        break;
      case DomainView::reversed:
        forbidden = q < -slack;
        break;
    }
    if (forbidden) {
      v.yes = false;
      v.witness = r.value;
      break;
    }
  }
  return v;
}

template <RealScalar R>
Poly1<R> wronskian(const Poly1<R>& f, const Poly1<R>& g) {
  return f.derivative() * g - f * g.derivative();
}

// Global sign of W[f,g] on the real line, decided exactly: a sign change
// happens iff W has a real root of odd multiplicity.
inline WronskianSign wronskian_sign(const Poly1<Rat>& f, const Poly1<Rat>& g) {
  Poly1<Rat> w = wronskian(f, g);
  if (w.is_zero()) return WronskianSign::identically_zero;
  for (const auto& [factor, mult] : yun_squarefree(w)) {
    if (mult % 2 == 0) continue;
    if (factor.degree() >= 1 && real_root_count_line(factor).distinct > 0)
      return WronskianSign::mixed;
  }
  int s = sign_at(w, XPoint<Rat>::plus_inf());
  return s > 0 ? WronskianSign::nonnegative : WronskianSign::nonpositive;
}
inline WronskianSign wronskian_sign(const Poly1<double>& f, const Poly1<double>& g) {
  return wronskian_sign(to_exact_real(f), to_exact_real(g));
}

// f_ll_g iff both hyperbolic, degrees within 1, and W[f,g] <= 0 on R.
inline PencilRelation pencil_relation(const Poly1<Rat>& f, const Poly1<Rat>& g) {
  PencilRelation out;
  if (f.is_zero() || g.is_zero()) {
    out.relation = Pencil::f_ll_g;
    out.degenerate = true;
    return out;
  }
  if (!is_hyperbolic(f).yes || !is_hyperbolic(g).yes)
    throw NotHyperbolicError("pencil_relation: inputs must be hyperbolic or zero");
  if (std::abs(f.degree() - g.degree()) > 1) {
    out.relation = Pencil::neither;
    return out;
  }
  switch (wronskian_sign(f, g)) {
    case WronskianSign::identically_zero:
      out.relation = Pencil::proportional;
      break;
    case WronskianSign::nonpositive:
      out.relation = Pencil::f_ll_g;
      break;
    case WronskianSign::nonnegative:
      out.relation = Pencil::g_ll_f;
      break;
    case WronskianSign::mixed:
      out.relation = Pencil::neither;
      break;
  }
  return out;
}

struct HbSplit {
  Poly1<Rat> f, g;  // h = f + ig
  PencilRelation relation;
  bool stable = false;
};

// Hermite-Biehler: h is upper-half-plane stable iff f, g are hyperbolic
// (or zero) and g is in proper position with f.
inline HbSplit hb_split(const Poly1<CQ>& h) {
  if (h.is_zero()) throw ZeroPolynomialError("hb_split: zero polynomial");
  HbSplit out;
  out.f = real_part(h);
  out.g = imag_part(h);
  if (out.f.is_zero() || out.g.is_zero()) {
    out.relation.relation = Pencil::f_ll_g;
    out.relation.degenerate = true;
    const Poly1<Rat>& live = out.f.is_zero() ? out.g : out.f;
    out.stable = is_hyperbolic(live).yes;
    return out;
  }
  if (!is_hyperbolic(out.f).yes || !is_hyperbolic(out.g).yes) {
    out.relation.relation = Pencil::neither;
    out.stable = false;
    return out;
  }
  out.relation = pencil_relation(out.f, out.g);
  out.stable = out.relation.relation == Pencil::g_ll_f ||
               out.relation.relation == Pencil::proportional;
  return out;
}

// Growth bound for stable f on |z| <= r, from the two coefficients above
// the lowest nonzero one.
template <Scalar K>
double szasz_bound(const Poly1<K>& f, double r) {
  if (f.is_zero()) throw ZeroPolynomialError("szasz_bound: zero polynomial");
  if (r <= 0) throw std::invalid_argument("szasz_bound: r must be positive");
  bool stable;
  if constexpr (scalar_exact_v<K>)
    stable = is_stable1(f, HalfPlane::upper).yes;
  else
    stable = is_stable1(f, HalfPlane::upper, false, Tolerance{}).yes;
  if (!stable) throw NotStableError("szasz_bound: input is not stable");
  int m = 0;
  while (scalar_is_zero(f.coeff(m))) ++m;
  double cm = abs_approx(f.coeff(m));
  double c1 = abs_approx(f.coeff(m + 1));
  double c2 = abs_approx(f.coeff(m + 2));
  double expo = r * c1 / cm + 3.0 * r * r * (c1 / cm) * (c1 / cm) + 3.0 * r * r * c2 / cm;
  return cm * std::pow(r, m) * std::exp(expo);
}

}  // namespace preserver
