#pragma once

// Bivariate stability: certified yes, witnessed no, or unknown.
//
// Certification works by exact reductions to univariate root location:
// scalar phase, one-variable contents, diagonal profiles h(zw), homogeneous
// profiles h(z/w), real pencils Q0 + w Q1 (Hermite-Biehler), real quadratics
// (closed form), and determinantal provenance. Falsification slices one
// variable in the open upper half plane and solves the other exactly per
// slice, so witnesses are never spurious.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "preserver/classify.hpp"
#include "preserver/combinatorics.hpp"
#include "preserver/errors.hpp"
#include "preserver/mobius.hpp"
#include "preserver/multiaffine.hpp"
#include "preserver/operators.hpp"
#include "preserver/poly2.hpp"
#include "preserver/roots.hpp"

namespace preserver {

enum class Outcome { stable, unstable, unknown };

struct Witness {
  CD z{0.0, 0.0}, w{0.0, 0.0};
  double residual = 0.0;
  bool exact = false;  // when set, (z_exact, w_exact) are a true zero
  std::optional<CQ> z_exact, w_exact;
};

struct SearchEvidence {
  long samples_tested = 0;
  double min_modulus_found = std::numeric_limits<double>::infinity();
  std::string grid;
  std::string note;
};

enum class CertKind {
  determinantal,
  degree1_hb,
  product,
  quadratic_closed_form,
  domain_pullback,
  univariate_reduction,
  scalar_multiple,
  diagonal_reduction,
  homogeneous_reduction
};

inline const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::determinantal: return "determinantal";
    case CertKind::degree1_hb: return "degree1_hb";
    case CertKind::product: return "product";
    case CertKind::quadratic_closed_form: return "quadratic_closed_form";
    case CertKind::domain_pullback: return "domain_pullback";
    case CertKind::univariate_reduction: return "univariate_reduction";
    case CertKind::scalar_multiple: return "scalar_multiple";
    case CertKind::diagonal_reduction: return "diagonal_reduction";
    case CertKind::homogeneous_reduction: return "homogeneous_reduction";
  }
  return "?";
}

using RatMatrix = std::vector<std::vector<Rat>>;

struct Certificate {
  CertKind kind = CertKind::product;
  Poly2<CQ> subject;            // the polynomial this node certifies
  std::string claim = "H2";     // domain_pullback nodes certify C-stability
  std::vector<Certificate> children;

  RatMatrix A, B, C;            // determinantal
  bool negated = false;         // subject = -det(zA + wB + C)

  Poly1<Rat> q0, q1;            // degree1_hb: subject = q0 + w q1
  Poly1<CQ> reduced;            // univariate / diagonal / homogeneous profile
  bool swapped = false;         // variables were exchanged before reduction
  CQ scale{Rat(1), Rat(0)};     // scalar_multiple: subject = scale * child

  std::optional<Mobius<Rat>> pullback_map;  // domain_pullback
  int weight_z = 0, weight_w = 0;
};

struct Verdict2 {
  Outcome outcome = Outcome::unknown;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  std::optional<SearchEvidence> evidence;
};

struct FalsifyResult {
  std::optional<Witness> witness;
  SearchEvidence evidence;
};

// ---------------------------------------------------------------------------
// small exact linear algebra over Rat

namespace detail {

// PSD over the rationals: pivot on the largest diagonal entry and recurse on
// the Schur complement; a zero diagonal forces its row/column to vanish.
inline bool is_psd(const RatMatrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return true;
  RatMatrix a = m;
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  while (!live.empty()) {
    int best = -1;
    for (std::size_t k = 0; k < live.size(); ++k) {
      int i = live[k];
      if (a[i][i] < 0) return false;
      if (best < 0 || a[i][i] > a[live[best]][live[best]]) best = static_cast<int>(k);
    }
    int p = live[best];
    if (a[p][p] == 0) {
      for (int i : live)
        for (int j : live)
          if (a[i][j] != 0) return false;
      return true;
    }
    live.erase(live.begin() + best);
    for (int i : live)
      for (int j : live) a[i][j] -= a[i][p] * a[p][j] / a[p][p];
  }
  return true;
}

inline Poly2<CQ> pencil_det(const RatMatrix& A, const RatMatrix& B, const RatMatrix& C) {
  int d = static_cast<int>(A.size());
  using P = Poly2<CQ>;
  std::vector<std::vector<P>> entry(d, std::vector<P>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      P e;
      e.add_term(1, 0, CQ(A[i][j], Rat(0)));
      e.add_term(0, 1, CQ(B[i][j], Rat(0)));
      e.add_term(0, 0, CQ(C[i][j], Rat(0)));
      entry[i][j] = e;
    }
  // Leibniz expansion; d stays tiny here.
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  P acc;
  do {
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inv;
    P term = P::constant(CQ(Rat(inv % 2 == 0 ? 1 : -1), Rat(0)));
    for (int i = 0; i < d; ++i) term = term * entry[i][perm[i]];
    acc = acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

inline Rat rat_approx(double x, long max_den = 4096) {
  if (x == 0.0) return Rat(0);
  bool neg = x < 0;
  double v = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 40; ++it) {
    double ip = std::floor(frac);
    if (ip > 1e17) break;
    long a = static_cast<long>(ip);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return rat_from_double(x);
  Rat r(p1, q1);
  return neg ? -r : r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// witness checking

inline bool verify_witness(const Poly2<CQ>& f, const Witness& wit, const Tolerance& tol = {}) {
  if (wit.exact && wit.z_exact && wit.w_exact) {
    if (!(wit.z_exact->im > 0) || !(wit.w_exact->im > 0)) return false;
    return f.eval(*wit.z_exact, *wit.w_exact).is_zero();
  }
  double slack_z = tol.eps * (1.0 + std::abs(wit.z.im));
  double slack_w = tol.eps * (1.0 + std::abs(wit.w.im));
  if (!(wit.z.im > slack_z) || !(wit.w.im > slack_w)) return false;
  Poly2<CD> g = to_float(f);
  double scale = std::max(1.0, coeff_scale(g));
  double pt = std::max({1.0, std::abs(to_std_complex(wit.z)), std::abs(to_std_complex(wit.w))});
  double bound = 1e4 * tol.eps * scale *
                 std::pow(pt, std::max(0, g.total_degree()));
  return abs_approx(g.eval(wit.z, wit.w)) <= bound;
}

// ---------------------------------------------------------------------------
// certificate verification (each node re-derives its own claim)

inline bool verify_certificate(const Certificate& cert);

namespace detail {

inline bool roots_confined(const Poly1<CQ>& h, bool nonnegative_axis) {
  // all roots real, on [0,inf) or (-inf,0] as requested
  auto eta = real_phase(h);
  if (!eta) return false;
  Poly1<Rat> hr = real_part(*eta * h);
  if (hr.degree() != h.degree()) return false;
  if (hr.degree() == 0) return true;
  RealRootCount all = real_root_count_line(hr);
  if (all.with_multiplicity != hr.degree()) return false;
  RealRootCount side =
      nonnegative_axis
          ? real_root_count_interval(hr, XPoint<Rat>::at(Rat(0)), XPoint<Rat>::plus_inf())
          : real_root_count_interval(hr, XPoint<Rat>::minus_inf(), XPoint<Rat>::at(Rat(0)));
  return side.with_multiplicity == hr.degree();
}

struct QuadDecision {
  bool applicable = false;
  bool stable = false;
  std::optional<Witness> witness;
};

inline QuadDecision quadratic_decide(const Poly2<CQ>& f, const Tolerance& tol);

}  // namespace detail

inline bool verify_certificate(const Certificate& cert) {
  const Poly2<CQ>& f = cert.subject;
  switch (cert.kind) {
    case CertKind::univariate_reduction: {
      Poly2<CQ> rebuilt = cert.swapped ? Poly2<CQ>::from_w(cert.reduced)
                                       : Poly2<CQ>::from_z(cert.reduced);
      if (!(rebuilt == f)) return false;
      return is_stable1(cert.reduced, HalfPlane::upper).yes;
    }
    case CertKind::scalar_multiple: {
      if (cert.children.size() != 1) return false;
      if (!(cert.children[0].subject * cert.scale == f)) return false;
      return verify_certificate(cert.children[0]);
    }
    case CertKind::product: {
      if (cert.children.empty()) return false;
      Poly2<CQ> prod = Poly2<CQ>::constant(CQ(Rat(1), Rat(0)));
      for (const auto& ch : cert.children) {
        prod = prod * ch.subject;
        if (!verify_certificate(ch)) return false;
      }
      return prod == f;
    }
    case CertKind::diagonal_reduction: {
      auto h = f.diagonal_profile();
      if (!h || !(*h == cert.reduced)) return false;
      return detail::roots_confined(cert.reduced, /*nonnegative_axis=*/true);
    }
    case CertKind::homogeneous_reduction: {
      if (!f.is_homogeneous()) return false;
      if (!(f.slice_w(CQ(Rat(1), Rat(0))) == cert.reduced)) return false;
      return detail::roots_confined(cert.reduced, /*nonnegative_axis=*/false);
    }
    case CertKind::degree1_hb: {
      Poly2<CQ> g = cert.swapped ? f.swap_vars() : f;
      if (!is_real_poly2(g) || g.deg_w() > 1) return false;
      Poly1<Rat> q0 = real_part(g.coeff_w(0)), q1 = real_part(g.coeff_w(1));
      if (!(q0 == cert.q0) || !(q1 == cert.q1)) return false;
      if (q0.is_zero() || q1.is_zero())
        return is_stable1(q0.is_zero() ? q1 : q0, HalfPlane::upper).yes;
      if (!is_hyperbolic(q0).yes || !is_hyperbolic(q1).yes) return false;
      PencilRelation rel = pencil_relation(cert.q1, cert.q0);
      return rel.relation == Pencil::f_ll_g || rel.relation == Pencil::proportional;
    }
    case CertKind::quadratic_closed_form: {
      auto d = detail::quadratic_decide(f, Tolerance{});
      return d.applicable && d.stable;
    }
    case CertKind::determinantal: {
      std::size_t d = cert.A.size();
      if (d == 0 || cert.B.size() != d || cert.C.size() != d) return false;
      for (const auto* m : {&cert.A, &cert.B, &cert.C})
        for (const auto& row : *m)
          if (row.size() != d) return false;
      if (!detail::is_psd(cert.A) || !detail::is_psd(cert.B)) return false;
      Poly2<CQ> det = detail::pencil_det(cert.A, cert.B, cert.C);
      if (cert.negated) det = det * CQ(Rat(-1), Rat(0));
      return det == f;
    }
    case CertKind::domain_pullback: {
      if (!cert.pullback_map || cert.children.size() != 1) return false;
      if (!verify_certificate(cert.children[0])) return false;
      Poly2<CQ> forward = conjugate_bivar(*cert.pullback_map, cert.children[0].subject,
                                          cert.weight_z, cert.weight_w, ConjVar::both);
      return forward == f;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// falsify: slice sweeps with exact per-slice root extraction

namespace detail {

inline std::vector<CD> nice_probes() {
  return {CD(0.0, 1.0),  CD(0.0, 2.0),   CD(1.0, 1.0),   CD(-1.0, 1.0),
          CD(0.0, 0.5),  CD(0.5, 1.0),   CD(-0.5, 1.0),  CD(0.0, 3.0),
          CD(1.0, 0.5),  CD(-1.0, 0.5),  CD(2.0, 1.0),   CD(-2.0, 1.0)};
}

inline CD polish_root(const Poly1<CD>& g, CD z0, int iters = 8) {
  Poly1<CD> dg = g.derivative();
  for (int i = 0; i < iters; ++i) {
    CD num = g.eval(z0);
    CD den = dg.eval(z0);
    if (abs_approx(den) < 1e-300) break;
    z0 = z0 - num / den;
  }
  return z0;
}

// Try to upgrade a float witness to an exact rational one.
inline void try_exact_witness(const Poly2<CQ>& f, Witness& wit) {
  CQ zq(rat_approx(wit.z.re, 64), rat_approx(wit.z.im, 64));
  CQ wq(rat_approx(wit.w.re, 64), rat_approx(wit.w.im, 64));
  if (zq.im > 0 && wq.im > 0 && f.eval(zq, wq).is_zero()) {
    wit.exact = true;
    wit.z_exact = zq;
    wit.w_exact = wq;
    wit.residual = 0.0;
  }
}

struct SliceScan {
  std::optional<Witness> witness;
  double min_modulus = std::numeric_limits<double>::infinity();
  double best_im = -std::numeric_limits<double>::infinity();
};

// One slice: fix w = s0 and solve for z, or fix z = s0 and solve for w when
// transposed. Witness coordinates always come out in the input orientation.
inline SliceScan scan_slice(const Poly2<CD>& fd, const Poly2<CQ>& fq, CD s0, bool transposed,
                            const Tolerance& tol) {
  SliceScan out;
  Poly1<CD> g = transposed ? fd.slice_z(s0) : fd.slice_w(s0);
  double scale = std::max(1.0, coeff_scale(fd));
  auto assemble = [&](CD root) {
    Witness wit;
    wit.z = transposed ? s0 : root;
    wit.w = transposed ? root : s0;
    return wit;
  };
  if (g.is_zero()) {
    // the whole slice vanishes; any interior point works
    Witness wit = assemble(CD(0.0, 1.0));
    wit.residual = 0.0;
    try_exact_witness(fq, wit);
    out.witness = wit;
    return out;
  }
  if (g.degree() < 1) {
    out.min_modulus = std::min(out.min_modulus, abs_approx(g.coeff(0)));
    return out;
  }
  RootSet rs;
  try {
    rs = all_roots(g, tol);
  } catch (const NoConvergenceError&) {
    return out;
  }
  for (const auto& r : rs.roots) {
    CD root = polish_root(g, r.value);
    double im_slack = std::max(tol.eps * (1.0 + std::abs(root.im)), 2.0 * r.radius);
    out.best_im = std::max(out.best_im, root.im);
    if (root.im > im_slack) {
      Witness wit = assemble(root);
      double pt = std::max({1.0, std::abs(to_std_complex(root)), std::abs(to_std_complex(s0))});
      wit.residual = abs_approx(fd.eval(wit.z, wit.w));
      double bound = 1e3 * tol.eps * scale * std::pow(pt, std::max(1, fd.total_degree()));
      if (wit.residual <= bound) {
        try_exact_witness(fq, wit);
        out.witness = wit;
        return out;
      }
    }
    Witness probe = assemble(CD(root.re, std::max(root.im, tol.eps)));
    out.min_modulus = std::min(out.min_modulus, abs_approx(fd.eval(probe.z, probe.w)));
  }
  return out;
}

}  // namespace detail

inline FalsifyResult falsify(const Poly2<CQ>& f, long budget = 10000, const Tolerance& tol = {}) {
  if (f.is_zero()) throw ZeroPolynomialError("falsify: zero polynomial");
  FalsifyResult out;
  out.evidence.grid = "probes12x2+log24xgolden+refine30%";

  Poly2<CD> fd = to_float(f);

  struct SlicePlan {
    CD s0;
    bool transposed;
  };
  std::vector<SlicePlan> plan;
  for (CD p : detail::nice_probes()) {
    plan.push_back({p, false});
    plan.push_back({p, true});
  }
  long initial = std::max<long>(static_cast<long>(plan.size()), (budget * 7) / 10);
  const double phi = 0.6180339887498949;
  const int levels = 24;
  long k = 0;
  while (static_cast<long>(plan.size()) < initial) {
    double t = double(k % levels) / double(levels - 1);
    double im = 4.0 * std::pow(2.5e-7, t);  // 4 down to 1e-6
    double re = -4.0 + 8.0 * std::fmod(0.5 + double(k) * phi, 1.0);
    plan.push_back({CD(re, im), (k % 2) == 1});
    ++k;
  }

  auto run_slice = [&](const SlicePlan& sp, double* best_im) {
    ++out.evidence.samples_tested;
    auto scan = detail::scan_slice(fd, f, sp.s0, sp.transposed, tol);
    out.evidence.min_modulus_found = std::min(out.evidence.min_modulus_found, scan.min_modulus);
    if (best_im) *best_im = scan.best_im;
    if (scan.witness && (scan.witness->exact || verify_witness(f, *scan.witness, tol))) {
      out.witness = scan.witness;
      return true;
    }
    return false;
  };

  std::vector<std::pair<double, SlicePlan>> ranked;
  for (const auto& sp : plan) {
    if (out.evidence.samples_tested >= budget) break;
    double best_im = 0.0;
    if (run_slice(sp, &best_im)) return out;
    ranked.push_back({best_im, sp});
  }

  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::array<CD, 8> offsets = {CD(0.05, 0.0),  CD(-0.05, 0.0), CD(0.0, -0.3),
                                     CD(0.0, 0.5),   CD(0.01, 0.0),  CD(-0.01, 0.0),
                                     CD(0.0, -0.05), CD(0.0, 0.02)};
  long iter = 0;
  const long iter_cap = 4 * budget + 64;
  while (out.evidence.samples_tested < budget && !ranked.empty() && iter < iter_cap) {
    std::size_t which = static_cast<std::size_t>(iter) % std::min<std::size_t>(ranked.size(), 3);
    std::size_t round = static_cast<std::size_t>(iter) / 3;
    ++iter;
    SlicePlan sp = ranked[which].second;
    CD off = offsets[round % offsets.size()];
    double shrink = 1.0 / double(1 + round / offsets.size());
    sp.s0 = sp.s0 + off * CD(shrink, 0.0);
    if (sp.s0.im <= tol.eps) continue;
    if (run_slice(sp, nullptr)) return out;
  }
  return out;
}

inline FalsifyResult falsify(const Poly2<CD>& f, long budget = 10000, const Tolerance& tol = {}) {
  return falsify(to_exact(f), budget, tol);
}

// ---------------------------------------------------------------------------
// closed-form analysis of real polynomials of total degree <= 2

namespace detail {

// Slices along w = t * dir for growing t; the caller knows a root direction.
inline std::optional<Witness> quad_slice_witness(const Poly2<CQ>& f, CD dir,
                                                 const Tolerance& tol) {
  Poly2<CD> fd = to_float(f);
  for (double t : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
    CD w0 = dir * CD(t, 0.0);
    if (w0.im <= 0) continue;
    auto scan = scan_slice(fd, f, w0, false, tol);
    if (scan.witness && (scan.witness->exact || verify_witness(f, *scan.witness, tol)))
      return scan.witness;
  }
  return std::nullopt;
}

inline QuadDecision quadratic_decide(const Poly2<CQ>& fin, const Tolerance& tol) {
  QuadDecision out;
  if (!is_real_poly2(fin) || fin.total_degree() > 2 || fin.total_degree() < 1) return out;
  Poly2<Rat> f = real_part(fin);
  bool swapped = false;
  Rat a = f.coeff(2, 0), b = f.coeff(1, 1), c = f.coeff(0, 2);
  Rat d = f.coeff(1, 0), e = f.coeff(0, 1), g = f.coeff(0, 0);
  if (c == 0 && a != 0) {
    std::swap(a, c);
    std::swap(d, e);
    swapped = true;
  }
  out.applicable = true;

  // analysis runs on the post-swap orientation throughout
  auto unswap = [&](Witness wit) {
    if (swapped) {
      std::swap(wit.z, wit.w);
      std::swap(wit.z_exact, wit.w_exact);
    }
    return wit;
  };
  auto exact_witness = [&](const CQ& ze, const CQ& we) {
    Witness wit;
    wit.exact = true;
    wit.z_exact = ze;
    wit.w_exact = we;
    wit.z = to_cd(ze);
    wit.w = to_cd(we);
    return unswap(wit);
  };

  if (a == 0 && c == 0) {
    if (b != 0) {
      // b zw + dz + ew + g = b(z + e/b)(w + d/b) + (g - de/b)
      Rat kappa = (d * e - g * b) / (b * b);
      if (kappa >= 0) {
        out.stable = true;
        return out;
      }
      // (z + e/b)(w + d/b) = kappa < 0: purely imaginary pair, exact
      out.witness = exact_witness(CQ(-e / b, Rat(1)), CQ(-d / b, -kappa));
      return out;
    }
    // affine dz + ew + g; a one-variable linear form has its zero on the line
    if (d == 0 || e == 0) {
      out.stable = true;
      return out;
    }
    if (d * e > 0) {
      out.stable = true;
      return out;
    }
    CQ ze(Rat(0), Rat(1));
    CQ we = (CQ(-g, Rat(0)) - CQ(d, Rat(0)) * ze) / CQ(e, Rat(0));
    out.witness = exact_witness(ze, we);
    return out;
  }

  // c != 0 now. The top homogeneous part a z^2 + b zw + c w^2 must itself be
  // stable: its profile h(u) = a u^2 + b u + c needs every root in (-inf, 0].
  Poly2<CQ> fq = swapped ? fin.swap_vars() : fin;
  Poly1<Rat> h{c, b, a};
  bool top_ok = true;
  if (h.degree() >= 1) {
    RealRootCount all = real_root_count_line(h);
    RealRootCount neg =
        real_root_count_interval(h, XPoint<Rat>::minus_inf(), XPoint<Rat>::at(Rat(0)));
    top_ok = all.with_multiplicity == h.degree() && neg.with_multiplicity == h.degree();
  }
  if (!top_ok) {
    // pick the most offending root direction of h and scale slices along it
    RootSet hr = all_roots(h);
    CD u0 = hr.roots.front().value;
    double best = -1;
    for (const auto& r : hr.roots) {
      double score = std::abs(r.value.im) + std::max(r.value.re, 0.0);
      if (score > best) {
        best = score;
        u0 = r.value;
      }
    }
    double arg = std::atan2(u0.im, u0.re);
    CD wdir = to_cd(std::polar(1.0, (M_PI - arg) / 2.0));
    if (auto wit = quad_slice_witness(fq, wdir, tol)) out.witness = unswap(*wit);
    return out;
  }

  // disc_w(x) = (bx + e)^2 - 4c (ax^2 + dx + g) must be >= 0 on all of R
  Rat A2 = b * b - Rat(4) * a * c;
  Rat B2 = Rat(2) * b * e - Rat(4) * c * d;
  Rat C2 = e * e - Rat(4) * c * g;
  std::optional<Rat> bad_x;
  if (A2 > 0) {
    if (B2 * B2 - Rat(4) * A2 * C2 > 0) bad_x = -B2 / (Rat(2) * A2);  // vertex
  } else if (A2 == 0) {
    if (B2 != 0) {
      Rat x0 = -C2 / B2;  // zero of the linear disc; step into the negative side
      bad_x = (B2 > 0) ? Rat(x0 - 1) : Rat(x0 + 1);
    } else if (C2 < 0) {
      bad_x = Rat(0);
    }
  } else {
    bad_x = Rat(1) + abs(B2 / A2) + abs(C2 / A2);
  }
  if (bad_x && A2 * *bad_x * *bad_x + B2 * *bad_x + C2 < 0) {
    // conjugate w-roots at z = bad_x; nudge z into H and re-solve
    Poly2<CD> fqd = to_float(fq);
    double x = to_double(*bad_x);
    for (double eps : {1e-3, 1e-4, 1e-2, 1e-1, 1e-5}) {
      auto scan = scan_slice(fqd, fq, CD(x, eps), /*transposed=*/true, tol);
      if (scan.witness && (scan.witness->exact || verify_witness(fq, *scan.witness, tol))) {
        out.witness = unswap(*scan.witness);
        return out;
      }
    }
    return out;  // unstable but witness construction failed; caller falls back
  }
  out.stable = true;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// certify / decide

namespace detail {

struct AnalyzeResult {
  std::optional<Certificate> cert;
  std::optional<Witness> witness;
  std::string note;
};

inline AnalyzeResult analyze(const Poly2<CQ>& f, const Tolerance& tol);

inline AnalyzeResult analyze_univariate(const Poly2<CQ>& f, bool in_w) {
  AnalyzeResult out;
  Poly1<CQ> u;
  if (in_w) {
    u = f.slice_z(CQ(Rat(0), Rat(0)));  // f has no z dependence
  } else {
    u = f.coeff_w(0);
  }
  LocusVerdict lv = is_stable1(u, HalfPlane::upper);
  if (lv.yes) {
    Certificate c;
    c.kind = CertKind::univariate_reduction;
    c.subject = f;
    c.reduced = u;
    c.swapped = in_w;
    out.cert = c;
  } else if (lv.witness) {
    Witness wit;
    if (in_w) {
      wit.z = CD(0.0, 1.0);
      wit.w = *lv.witness;
    } else {
      wit.z = *lv.witness;
      wit.w = CD(0.0, 1.0);
    }
    try_exact_witness(f, wit);
    out.witness = wit;
  }
  return out;
}

inline AnalyzeResult analyze_diagonal(const Poly2<CQ>& f, const Poly1<CQ>& h,
                                      const Tolerance& tol) {
  AnalyzeResult out;
  if (roots_confined(h, /*nonnegative_axis=*/true)) {
    Certificate c;
    c.kind = CertKind::diagonal_reduction;
    c.subject = f;
    c.reduced = h;
    out.cert = c;
    return out;
  }
  // some root rho of h lies off [0, inf); f vanishes at z = w = sqrt(rho)
  RootSet rs = all_roots(h, tol);
  CD rho = rs.roots.front().value;
  double best = -1;
  std::optional<Rat> exact_neg;
  for (const auto& r : rs.roots) {
    double score = std::abs(r.value.im) + std::max(-r.value.re, 0.0);
    if (score > best) {
      best = score;
      rho = r.value;
    }
  }
  // exact negative rational root: (it, i|rho|/t) is an exact zero of h(zw)
  for (const auto& [factor, mult] : yun_squarefree(h)) {
    if (factor.degree() == 1) {
      CQ root = (CQ(Rat(0), Rat(0)) - factor.coeff(0)) / factor.coeff(1);
      if (root.is_real() && root.re < 0) exact_neg = root.re;
    }
  }
  Witness wit;
  if (exact_neg) {
    CQ ze(Rat(0), Rat(1));
    CQ we(Rat(0), -*exact_neg);
    wit.exact = true;
    wit.z_exact = ze;
    wit.w_exact = we;
    wit.z = to_cd(ze);
    wit.w = to_cd(we);
  } else {
    std::complex<double> s = std::sqrt(to_std_complex(rho));
    if (s.imag() < 0) s = -s;
    if (s.imag() == 0) s = std::complex<double>(0.0, std::sqrt(std::abs(rho.re)));
    wit.z = to_cd(s);
    wit.w = to_cd(s);
    try_exact_witness(f, wit);
  }
  out.witness = wit;
  return out;
}

inline AnalyzeResult analyze_homogeneous(const Poly2<CQ>& f, const Tolerance& tol) {
  AnalyzeResult out;
  Poly1<CQ> h = f.slice_w(CQ(Rat(1), Rat(0)));
  if (roots_confined(h, /*nonnegative_axis=*/false)) {
    Certificate c;
    c.kind = CertKind::homogeneous_reduction;
    c.subject = f;
    c.reduced = h;
    out.cert = c;
    return out;
  }
  RootSet rs = all_roots(h, tol);
  CD u0 = rs.roots.front().value;
  double best = -1;
  std::optional<Rat> exact_pos;
  for (const auto& r : rs.roots) {
    double score = std::abs(r.value.im) + std::max(r.value.re, 0.0);
    if (score > best) {
      best = score;
      u0 = r.value;
    }
  }
  for (const auto& [factor, mult] : yun_squarefree(h)) {
    if (factor.degree() == 1) {
      CQ root = (CQ(Rat(0), Rat(0)) - factor.coeff(0)) / factor.coeff(1);
      if (root.is_real() && root.re > 0) exact_pos = root.re;
    }
  }
  Witness wit;
  if (exact_pos) {
    CQ we(Rat(0), Rat(1));
    CQ ze(Rat(0), *exact_pos);
    wit.exact = true;
    wit.z_exact = ze;
    wit.w_exact = we;
    wit.z = to_cd(ze);
    wit.w = to_cd(we);
  } else {
    double phi_arg = std::atan2(u0.im, u0.re);
    std::complex<double> w0 = std::polar(1.0, (M_PI - phi_arg) / 2.0);
    std::complex<double> z0 = to_std_complex(u0) * w0;
    wit.z = to_cd(z0);
    wit.w = to_cd(w0);
    try_exact_witness(f, wit);
  }
  out.witness = wit;
  return out;
}

inline AnalyzeResult analyze_pencil(const Poly2<CQ>& f, bool swapped) {
  AnalyzeResult out;
  Poly1<Rat> q0 = real_part(f.coeff_w(0));
  Poly1<Rat> q1 = real_part(f.coeff_w(1));
  Poly1<CQ> h = complexify(q0) + complexify(q1) * CQ(Rat(0), Rat(1));
  LocusVerdict lv = is_stable1(h, HalfPlane::upper);
  if (lv.yes) {
    Certificate c;
    c.kind = CertKind::degree1_hb;
    c.subject = f;
    c.q0 = q0;
    c.q1 = q1;
    c.swapped = swapped;
    out.cert = c;
    return out;
  }
  if (lv.witness) {
    Witness wit;
    wit.z = *lv.witness;
    wit.w = CD(0.0, 1.0);
    try_exact_witness(f, wit);  // f is the poly the pencil test ran on
    if (swapped) {
      std::swap(wit.z, wit.w);
      std::swap(wit.z_exact, wit.w_exact);
    }
    out.witness = wit;
  }
  return out;
}

inline AnalyzeResult analyze(const Poly2<CQ>& f, const Tolerance& tol) {
  AnalyzeResult out;
  // univariate in z or w
  if (f.deg_w() <= 0) return analyze_univariate(f, /*in_w=*/false);
  if (f.deg_z() <= 0) return analyze_univariate(f, /*in_w=*/true);

  // strip a scalar phase when it makes the coefficients real
  if (!is_real_poly2(f)) {
    auto eta = real_phase(f);
    if (eta) {
      Poly2<CQ> g = f * *eta;
      AnalyzeResult inner = analyze(g, tol);
      if (inner.cert) {
        Certificate c;
        c.kind = CertKind::scalar_multiple;
        c.subject = f;
        c.scale = CQ(Rat(1), Rat(0)) / *eta;
        c.children.push_back(*inner.cert);
        out.cert = c;
      }
      out.witness = inner.witness;  // same zero set
      out.note = inner.note;
      return out;
    }
  }

  // pull out one-variable contents
  Poly1<CQ> cz = content_in_z(f);
  if (cz.degree() >= 1) {
    Poly2<CQ> rest = divide_exact_z(f, cz);
    AnalyzeResult left = analyze(Poly2<CQ>::from_z(cz), tol);
    AnalyzeResult right = analyze(rest, tol);
    if (left.witness) {
      out.witness = left.witness;
      return out;
    }
    if (right.witness) {
      out.witness = right.witness;
      return out;
    }
    if (left.cert && right.cert) {
      Certificate c;
      c.kind = CertKind::product;
      c.subject = f;
      c.children = {*left.cert, *right.cert};
      out.cert = c;
    }
    return out;
  }
  Poly1<CQ> cw = content_in_w(f);
  if (cw.degree() >= 1) {
    Poly2<CQ> rest = divide_exact_z(f.swap_vars(), cw).swap_vars();
    AnalyzeResult left = analyze(Poly2<CQ>::from_w(cw), tol);
    AnalyzeResult right = analyze(rest, tol);
    if (left.witness) {
      out.witness = left.witness;
      return out;
    }
    if (right.witness) {
      out.witness = right.witness;
      return out;
    }
    if (left.cert && right.cert) {
      Certificate c;
      c.kind = CertKind::product;
      c.subject = f;
      c.children = {*left.cert, *right.cert};
      out.cert = c;
    }
    return out;
  }

  if (auto h = f.diagonal_profile()) return analyze_diagonal(f, *h, tol);
  if (f.is_homogeneous()) return analyze_homogeneous(f, tol);

  if (is_real_poly2(f)) {
    if (f.deg_w() == 1) return analyze_pencil(f, /*swapped=*/false);
    if (f.deg_z() == 1) {
      AnalyzeResult inner = analyze_pencil(f.swap_vars(), /*swapped=*/true);
      if (inner.cert) {
        inner.cert->subject = f;  // pencil analysis ran on the swapped poly
      }
      return inner;
    }
    if (f.total_degree() <= 2) {
      QuadDecision qd = quadratic_decide(f, tol);
      if (qd.applicable && qd.stable) {
        Certificate c;
        c.kind = CertKind::quadratic_closed_form;
        c.subject = f;
        out.cert = c;
        return out;
      }
      if (qd.applicable && qd.witness) {
        out.witness = qd.witness;
        return out;
      }
      if (qd.applicable) out.note = "quadratic closed form: unstable, witness via search";
      return out;
    }
  }
  return out;
}

}  // namespace detail

inline std::optional<Certificate> certify(const Poly2<CQ>& f,
                                          const std::optional<Certificate>& hint = std::nullopt,
                                          const Tolerance& tol = {}) {
  if (f.is_zero()) throw ZeroPolynomialError("certify: zero polynomial");
  if (hint && hint->subject == f && verify_certificate(*hint)) return hint;
  auto res = detail::analyze(f, tol);
  return res.cert;
}

inline Verdict2 decide(const Poly2<CQ>& f, long budget = 10000, const Tolerance& tol = {},
                       const std::optional<Certificate>& hint = std::nullopt) {
  if (f.is_zero()) throw ZeroPolynomialError("decide: zero polynomial");
  Verdict2 out;
  if (hint && hint->subject == f && verify_certificate(*hint)) {
    out.outcome = Outcome::stable;
    out.certificate = hint;
    return out;
  }
  auto res = detail::analyze(f, tol);
  if (res.cert) {
    out.outcome = Outcome::stable;
    out.certificate = res.cert;
    return out;
  }
  if (res.witness && verify_witness(f, *res.witness, tol)) {
    out.outcome = Outcome::unstable;
    out.witness = res.witness;
    return out;
  }
  FalsifyResult fr = falsify(f, budget, tol);
  if (fr.witness) {
    out.outcome = Outcome::unstable;
    out.witness = fr.witness;
    out.evidence = fr.evidence;
    return out;
  }
  out.evidence = fr.evidence;
  if (!res.note.empty())
    out.evidence->note = res.note;

  // split filter: a stable complex f needs real and imaginary parts real
  // stable; a violating part refutes f, but only yields a usable witness
  // where f itself vanishes
  if (!is_real_poly2(f)) {
    Poly2<Rat> gr = real_part(f), hr = imag_part(f);
    for (const Poly2<Rat>* part : {&gr, &hr}) {
      if (part->is_zero()) continue;
      Poly2<CQ> pc = complexify(*part);
      auto pres = detail::analyze(pc, tol);
      std::optional<Witness> pw = pres.witness;
      if (!pw) {
        FalsifyResult pfr = falsify(pc, budget / 4 + 1, tol);
        pw = pfr.witness;
      }
      if (pw) {
        Witness lifted = *pw;
        if (verify_witness(f, lifted, tol)) {
          out.outcome = Outcome::unstable;
          out.witness = lifted;
          return out;
        }
        out.evidence->note = "split filter: a real/imaginary part is unstable, so the "
                             "input cannot be stable; no common zero found within budget";
      }
    }
  }
  out.outcome = Outcome::unknown;
  return out;
}

inline Verdict2 decide(const Poly2<CD>& f, long budget = 10000, const Tolerance& tol = {}) {
  return decide(to_exact(f), budget, tol);
}

// ---------------------------------------------------------------------------
// certified generator: f = det(zA + wB + C), A and B PSD, C symmetric

struct GeneratedStable {
  Poly2<Rat> f;
  Certificate certificate;
};

inline GeneratedStable gen_real_stable(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("gen_real_stable: d >= 1 required");
  std::mt19937_64 eng(seed);
  auto small = [&](int lo, int hi) {
    return Rat(static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo);
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatMatrix M(d, std::vector<Rat>(d)), N(d, std::vector<Rat>(d));
    RatMatrix A(d, std::vector<Rat>(d, Rat(0))), B(d, std::vector<Rat>(d, Rat(0)));
    RatMatrix C(d, std::vector<Rat>(d, Rat(0)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        M[i][j] = small(-2, 2);
        N[i][j] = small(-2, 2);
      }
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        C[i][j] = small(-2, 2);
        C[j][i] = C[i][j];
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          A[i][j] += M[i][k] * M[j][k];
          B[i][j] += N[i][k] * N[j][k];
        }
    Poly2<CQ> f = detail::pencil_det(A, B, C);
    if (f.is_zero()) continue;
    GeneratedStable out;
    out.f = real_part(f);
    out.certificate.kind = CertKind::determinantal;
    out.certificate.subject = f;
    out.certificate.A = A;
    out.certificate.B = B;
    out.certificate.C = C;
    return out;
  }
  throw NoConvergenceError("gen_real_stable: could not draw a nonzero determinant");
}

inline GeneratedStable gen_real_stable_from(const RatMatrix& A, const RatMatrix& B,
                                            const RatMatrix& C) {
  Poly2<CQ> f = detail::pencil_det(A, B, C);
  GeneratedStable out;
  out.f = real_part(f);
  out.certificate.kind = CertKind::determinantal;
  out.certificate.subject = f;
  out.certificate.A = A;
  out.certificate.B = B;
  out.certificate.C = C;
  return out;
}

// ---------------------------------------------------------------------------
// polarization: w^k -> e_k(x_1..x_d) / C(d,k)

template <Scalar K>
struct PolarForm {
  int d = 0;
  std::vector<Poly1<K>> qk;  // original w-coefficients

  K eval(const K& z, const std::vector<K>& xs) const {
    if (static_cast<int>(xs.size()) != d)
      throw DimensionMismatchError("PolarForm::eval: wrong point dimension");
    // elementary symmetric values via the generating product prod (1 + x_i t)
    std::vector<K> e(d + 1, K(0));
    e[0] = K(1);
    for (int i = 0; i < d; ++i)
      for (int k = std::min(i + 1, d); k >= 1; --k) e[k] = e[k] + xs[i] * e[k - 1];
    K acc(0);
    for (int k = 0; k < static_cast<int>(qk.size()); ++k)
      acc = acc + qk[k].eval(z) * e[k] / binomial<K>(d, k);
    return acc;
  }

  // multiaffine part in the x variables at a fixed z
  MultiAffine<K> at_z(const K& z) const {
    MultiAffine<K> acc(d);
    for (int k = 0; k < static_cast<int>(qk.size()); ++k) {
      K c = qk[k].eval(z) / binomial<K>(d, k);
      if (scalar_is_zero(c)) continue;
      acc = acc + elementary_symmetric<K>(d, k) * c;
    }
    return acc;
  }

  // setting every x_j = w collapses e_k to C(d,k) w^k and recovers f
  Poly2<K> diag_restrict() const {
    std::vector<Poly1<K>> rows = qk;
    return Poly2<K>(std::move(rows));
  }
};

template <Scalar K>
PolarForm<K> polarize(const Poly2<K>& f, int d) {
  if (f.deg_w() > d) throw DegreeExceededError("polarize: wdeg f exceeds d");
  PolarForm<K> out;
  out.d = d;
  for (int k = 0; k <= std::max(f.deg_w(), 0); ++k) out.qk.push_back(f.coeff_w(k));
  return out;
}

}  // namespace preserver
