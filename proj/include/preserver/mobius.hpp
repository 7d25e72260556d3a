#pragma once

// Mobius maps Phi(z) = (az+b)/(cz+d), the circular domains C = Phi^{-1}(H)
// they induce, and the weighted conjugations
//   phi_n(f)(z) = (cz+d)^n f(Phi(z)).
//
// Membership and classification run through one real quadric
//   q(p) = alpha |p|^2 + beta x + gamma y + delta,  p = x + iy,
// with q(p) = Im(Phi(p)) * |cp+d|^2, so sign q decides side. q extends
// continuously through the pole -d/c, where it vanishes: the pole always
// sits on the boundary circle.

#include <optional>
#include <stdexcept>
#include <vector>

#include "preserver/errors.hpp"
#include "preserver/poly.hpp"
#include "preserver/poly2.hpp"

namespace preserver {

enum class DomainKind { half_plane, disk, disk_exterior };
enum class DomainView { open_C, closed_complement, boundary, reversed };
enum class Side { in_C, on_boundary, in_Cr };
enum class ConjDirection { forward, inverse };
enum class KernelSign { plus, minus };

template <RealScalar R>
struct Mobius {
  using C = Cx<R>;
  C a, b, c, d;

  Mobius(C a_, C b_, C c_, C d_, const Tolerance& tol = {}) : a(a_), b(b_), c(c_), d(d_) {
    double scale = std::max({abs_approx(a), abs_approx(b), abs_approx(c), abs_approx(d)});
    C det = a * d - b * c;
    bool degenerate = scalar_exact_v<C> ? det.is_zero()
                                        : abs_approx(det) <= tol.eps * scale * scale;
    if (degenerate) throw DegenerateMapError("Mobius: ad - bc = 0");
    // Half-plane targets must be affine. The quadric coefficient
    // alpha = Im(a conj(c)) vanishing with c != 0 means the domain is a
    // half-plane reached through a non-affine map; several conjugation
    // identities later assume the affine form, so reject early.
    R alpha = (a * c.conj()).im;
    bool alpha_zero = is_exact_v<R> ? sign_of(alpha, Tolerance{0.0}) == 0
                                    : std::abs(to_double(alpha)) <= tol.eps * scale * scale;
    if (alpha_zero && !c.is_zero())
      throw DegenerateMapError(
          "Mobius: half-plane domain requires c = 0; renormalize as Phi(z) = (a'z + b')/d'");
  }

  C det() const { return a * d - b * c; }
  Mobius inverse() const { return Mobius(d, C(0) - b, C(0) - c, a); }
  // Map for the reversed domain C^r: Im(-Phi) > 0 exactly where Im(Phi) < 0.
  Mobius reversed() const { return Mobius(C(0) - a, C(0) - b, c, d); }

  bool has_pole() const { return !c.is_zero(); }
  C pole() const {
    if (!has_pole()) throw std::domain_error("Mobius::pole: affine map");
    return (C(0) - d) / c;
  }
  bool is_pole(const C& p, const Tolerance& tol = {}) const {
    if (!has_pole()) return false;
    C v = c * p + d;
    if constexpr (scalar_exact_v<C>)
      return v.is_zero();
    else
      return abs_approx(v) <= tol.eps * (1.0 + abs_approx(p)) * abs_approx(c);
  }
  C apply(const C& p) const { return (a * p + b) / (c * p + d); }

  // q(p) = Im(Phi(p)) |cp+d|^2 as a polynomial in (x, y).
  R q_alpha() const { return (a * c.conj()).im; }
  R q_beta() const { return (a * d.conj() + b * c.conj()).im; }
  R q_gamma() const { return (a * d.conj() - b * c.conj()).re; }
  R q_delta() const { return (b * d.conj()).im; }
  R q_value(const C& p) const {
    return q_alpha() * p.norm() + q_beta() * p.re + q_gamma() * p.im + q_delta();
  }
  double q_scale() const {
    double s = std::max({abs_approx(a), abs_approx(b), abs_approx(c), abs_approx(d)});
    return s * s;
  }
};

template <RealScalar R>
struct DomainClassification {
  DomainKind kind;
  // disk kinds
  Cx<R> center{R(0), R(0)};
  R radius_sq{0};
  // half-plane: C = { beta x + gamma y + delta > 0 }
  R line_beta{0}, line_gamma{0}, line_delta{0};
};

template <RealScalar R>
DomainClassification<R> classify_domain(const Mobius<R>& m, const Tolerance& tol = {}) {
  DomainClassification<R> out;
  R alpha = m.q_alpha(), beta = m.q_beta(), gamma = m.q_gamma(), delta = m.q_delta();
  int s;
  if constexpr (is_exact_v<R>)
    s = sign_of(alpha, Tolerance{0.0});
  else
    s = (std::abs(to_double(alpha)) <= tol.eps * m.q_scale()) ? 0
                                                              : (to_double(alpha) > 0 ? 1 : -1);
  if (s == 0) {
    out.kind = DomainKind::half_plane;
    out.line_beta = beta;
    out.line_gamma = gamma;
    out.line_delta = delta;
    return out;
  }
  out.kind = s > 0 ? DomainKind::disk_exterior : DomainKind::disk;
  R two_alpha = alpha + alpha;
  out.center = Cx<R>(R(0) - beta / two_alpha, R(0) - gamma / two_alpha);
  out.radius_sq = (beta * beta + gamma * gamma - R(4) * alpha * delta) / (two_alpha * two_alpha);
  return out;
}

template <RealScalar R>
class CircularDomain {
 public:
  explicit CircularDomain(Mobius<R> m, DomainView view = DomainView::open_C,
                          const Tolerance& tol = {})
      : map_(std::move(m)), view_(view), cls_(classify_domain(map_, tol)) {}

  const Mobius<R>& mobius() const { return map_; }
  DomainView view() const { return view_; }
  const DomainClassification<R>& classification() const { return cls_; }
  DomainKind kind() const { return cls_.kind; }

  bool c_is_bounded() const { return cls_.kind == DomainKind::disk; }
  bool complement_is_bounded() const { return cls_.kind == DomainKind::disk_exterior; }
  bool boundary_is_line() const { return cls_.kind == DomainKind::half_plane; }

  Side side_of(const Cx<R>& p, const Tolerance& tol = {}) const {
    R q = map_.q_value(p);
    int s;
    if constexpr (is_exact_v<R>)
      s = sign_of(q, Tolerance{0.0});
    else {
      double scale = map_.q_scale() * (1.0 + to_double(p.norm()));
      double qd = to_double(q);
      s = (std::abs(qd) <= tol.eps * scale) ? 0 : (qd > 0 ? 1 : -1);
    }
    return s > 0 ? Side::in_C : (s == 0 ? Side::on_boundary : Side::in_Cr);
  }

  // Membership under the selected point-set view.
  bool contains(const Cx<R>& p, const Tolerance& tol = {}) const {
    Side s = side_of(p, tol);
    switch (view_) {
      case DomainView::open_C:
        return s == Side::in_C;
      case DomainView::closed_complement:
        return s != Side::in_C;
      case DomainView::boundary:
        return s == Side::on_boundary;
      case DomainView::reversed:
        return s == Side::in_Cr;
    }
    return false;
  }

  CircularDomain with_view(DomainView v) const {
    CircularDomain out = *this;
    out.view_ = v;
    return out;
  }
  // Domain whose open side is this one's C^r.
  CircularDomain reversed_domain(const Tolerance& tol = {}) const {
    return CircularDomain(map_.reversed(), view_, tol);
  }

 private:
  Mobius<R> map_;
  DomainView view_;
  DomainClassification<R> cls_;
};

// (cz+d)^n f(Phi(z)) expanded; inverse divides out det^n so that
// inverse(forward(f)) = f exactly on degree <= n.
template <RealScalar R>
Poly1<Cx<R>> conjugate_poly(const Mobius<R>& m, int n, const Poly1<Cx<R>>& f,
                            ConjDirection dir = ConjDirection::forward) {
  using C = Cx<R>;
  if (f.degree() > n) throw DegreeExceededError("conjugate_poly: deg f exceeds weight n");
  const Mobius<R> use = (dir == ConjDirection::forward) ? m : m.inverse();
  Poly1<C> num{use.b, use.a};  // az + b
  Poly1<C> den{use.d, use.c};  // cz + d
  std::vector<Poly1<C>> num_pow(n + 1), den_pow(n + 1);
  num_pow[0] = Poly1<C>::one();
  den_pow[0] = Poly1<C>::one();
  for (int k = 1; k <= n; ++k) {
    num_pow[k] = num_pow[k - 1] * num;
    den_pow[k] = den_pow[k - 1] * den;
  }
  Poly1<C> acc;
  for (int k = 0; k <= std::min(n, std::max(f.degree(), 0)); ++k) {
    C fk = f.coeff(k);
    if (scalar_is_zero(fk)) continue;
    acc = acc + num_pow[k] * den_pow[n - k] * fk;
  }
  if (dir == ConjDirection::inverse) {
    C scale = C(1);
    C det = m.det();
    for (int k = 0; k < n; ++k) scale = scale * det;
    acc = acc / scale;
  }
  return acc;
}

enum class ConjVar { z_only, w_only, both };

template <RealScalar R>
Poly2<Cx<R>> conjugate_bivar(const Mobius<R>& m, const Poly2<Cx<R>>& f, int mz, int nw,
                             ConjVar which, ConjDirection dir = ConjDirection::forward) {
  using C = Cx<R>;
  Poly2<C> g = f;
  if (which == ConjVar::z_only || which == ConjVar::both) {
    if (g.deg_z() > mz) throw DegreeExceededError("conjugate_bivar: z-degree exceeds weight");
    std::vector<Poly1<C>> rows;
    rows.reserve(g.rows().size());
    for (const auto& q : g.rows()) rows.push_back(conjugate_poly(m, mz, q, dir));
    g = Poly2<C>(std::move(rows));
  }
  if (which == ConjVar::w_only || which == ConjVar::both) {
    if (g.deg_w() > nw) throw DegreeExceededError("conjugate_bivar: w-degree exceeds weight");
    g = g.swap_vars();
    std::vector<Poly1<C>> rows;
    rows.reserve(g.rows().size());
    for (const auto& q : g.rows()) rows.push_back(conjugate_poly(m, nw, q, dir));
    g = Poly2<C>(std::move(rows)).swap_vars();
  }
  return g;
}

// ((az+b)(cw+d) +/- (aw+b)(cz+d))^n
template <RealScalar R>
Poly2<Cx<R>> circ_symbol_kernel(const Mobius<R>& m, int n, KernelSign sign = KernelSign::plus) {
  using C = Cx<R>;
  if (n < 0) throw std::invalid_argument("circ_symbol_kernel: negative n");
  Poly1<C> num{m.b, m.a};
  Poly1<C> den{m.d, m.c};
  Poly2<C> base = Poly2<C>::from_z(num) * Poly2<C>::from_w(den);
  Poly2<C> cross = Poly2<C>::from_w(num) * Poly2<C>::from_z(den);
  base = (sign == KernelSign::plus) ? base + cross : base - cross;
  return pow2(base, n);
}

enum class NamedDomain {
  real_line,
  upper_half_plane,
  lower_half_plane,
  unit_disk,
  unit_circle,
  unit_disk_exterior
};

// Phi(z) = (i/2)(z+i)/(z-i); C is the exterior of the unit disk and
// C' the closed unit disk.
inline Mobius<Rat> unit_disk_mobius() {
  using C = Cx<Rat>;
  return Mobius<Rat>(C(Rat(0), Rat(1, 2)), C(Rat(-1, 2), Rat(0)), C(Rat(1), Rat(0)),
                     C(Rat(0), Rat(-1)));
}
inline Mobius<Rat> identity_mobius() {
  using C = Cx<Rat>;
  return Mobius<Rat>(C(Rat(1)), C(Rat(0)), C(Rat(0)), C(Rat(1)));
}

inline CircularDomain<Rat> standard_domain(NamedDomain which) {
  using C = Cx<Rat>;
  switch (which) {
    case NamedDomain::real_line:
      return CircularDomain<Rat>(identity_mobius(), DomainView::boundary);
    case NamedDomain::upper_half_plane:
      return CircularDomain<Rat>(identity_mobius(), DomainView::open_C);
    case NamedDomain::lower_half_plane:
      return CircularDomain<Rat>(
          Mobius<Rat>(C(Rat(-1)), C(Rat(0)), C(Rat(0)), C(Rat(1))), DomainView::open_C);
    case NamedDomain::unit_disk:
      return CircularDomain<Rat>(unit_disk_mobius(), DomainView::closed_complement);
    case NamedDomain::unit_circle:
      return CircularDomain<Rat>(unit_disk_mobius(), DomainView::boundary);
    case NamedDomain::unit_disk_exterior:
      return CircularDomain<Rat>(unit_disk_mobius().reversed(), DomainView::closed_complement);
  }
  throw std::invalid_argument("standard_domain: unknown shorthand");
}

template <RealScalar R>
Mobius<double> to_float(const Mobius<R>& m) {
  if constexpr (std::same_as<R, double>)
    return m;
  else
    return Mobius<double>(to_cd(m.a), to_cd(m.b), to_cd(m.c), to_cd(m.d));
}

}  // namespace preserver
