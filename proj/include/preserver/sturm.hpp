#pragma once

// Exact real-root and half-plane root location for polynomials with rational
// (or rational-complex) coefficients: canonical signed remainder chains,
// Sturm counts on intervals, Cauchy indices, and Yun square-free splitting.

#include <optional>
#include <utility>
#include <vector>

#include "preserver/errors.hpp"
#include "preserver/poly.hpp"

namespace preserver {

// Evaluation point for sign queries: finite value or +/- infinity.
template <RealScalar R>
struct XPoint {
  int infty = 0;  // -1, 0, +1
  R value{};

  static XPoint minus_inf() { return {-1, R(0)}; }
  static XPoint plus_inf() { return {+1, R(0)}; }
  static XPoint at(R v) { return {0, std::move(v)}; }
};

template <RealScalar R>
int sign_at(const Poly1<R>& f, const XPoint<R>& x) {
  if (f.is_zero()) return 0;
  if (x.infty == 0) {
    R v = f.eval(x.value);
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
  }
  int s = f.leading() > 0 ? 1 : -1;
  if (x.infty < 0 && (f.degree() % 2 != 0)) s = -s;
  return s;
}

// Canonical signed remainder chain p0, p1, -rem(p0,p1), ...
// Each element is rescaled by a positive constant; signs are what matter.
template <RealScalar R>
std::vector<Poly1<R>> signed_remainder_chain(Poly1<R> p0, Poly1<R> p1) {
  std::vector<Poly1<R>> chain;
  auto normalize = [](Poly1<R>& p) {
    if (p.is_zero()) return;
    R l = p.leading();
    if (l < 0) l = -l;
    p = p / l;
  };
  normalize(p0);
  normalize(p1);
  chain.push_back(std::move(p0));
  if (chain.back().is_zero()) return chain;
  chain.push_back(std::move(p1));
  while (!chain.back().is_zero()) {
    const Poly1<R>& a = chain[chain.size() - 2];
    const Poly1<R>& b = chain.back();
    auto [q, r] = divmod(a, b);
    (void)q;
    Poly1<R> next = -r;
    normalize(next);
    chain.push_back(std::move(next));
  }
  chain.pop_back();
  return chain;
}

template <RealScalar R>
int sign_variations(const std::vector<Poly1<R>>& chain, const XPoint<R>& x) {
  int count = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Cauchy index of g/f over the whole real line.
template <RealScalar R>
int cauchy_index(const Poly1<R>& f, const Poly1<R>& g) {
  if (f.is_zero()) throw ZeroPolynomialError("cauchy_index: zero denominator");
  if (g.is_zero()) return 0;
  auto chain = signed_remainder_chain(f, g);
  return sign_variations(chain, XPoint<R>::minus_inf()) -
         sign_variations(chain, XPoint<R>::plus_inf());
}

template <Scalar K>
Poly1<K> squarefree_part(const Poly1<K>& f) {
  if (f.is_zero()) throw ZeroPolynomialError("squarefree_part: zero polynomial");
  if (f.degree() == 0) return Poly1<K>::one();
  Poly1<K> g = gcd(f, f.derivative());
  auto [ok, q] = divide_exact(f, g);
  (void)ok;
  return q.monic();
}

// Yun's algorithm: f = lc * prod factor^multiplicity with monic square-free
// factors, pairwise coprime. Requires exact arithmetic to be meaningful.
template <Scalar K>
std::vector<std::pair<Poly1<K>, int>> yun_squarefree(const Poly1<K>& f) {
  if (f.is_zero()) throw ZeroPolynomialError("yun_squarefree: zero polynomial");
  std::vector<std::pair<Poly1<K>, int>> out;
  if (f.degree() == 0) return out;
  Poly1<K> fp = f.derivative();
  Poly1<K> a = gcd(f, fp);
  Poly1<K> b = divide_exact(f, a).second;
  Poly1<K> c = divide_exact(fp, a).second;
  Poly1<K> d = c - b.derivative();
  int mult = 1;
  while (b.degree() > 0) {
    Poly1<K> p = gcd(b, d);
    if (p.degree() > 0) out.emplace_back(p.monic(), mult);
    b = divide_exact(b, p).second;
    d = divide_exact(d, p).second - b.derivative();
    ++mult;
  }
  return out;
}

// Distinct real roots of f in the closed interval [lo, hi] (whole line when
// the endpoints are infinite). Exact for rational coefficients.
template <RealScalar R>
int count_real_roots_distinct(const Poly1<R>& f, const XPoint<R>& lo, const XPoint<R>& hi) {
  if (f.is_zero()) throw ZeroPolynomialError("count_real_roots_distinct: zero polynomial");
  if (f.degree() == 0) return 0;
  Poly1<R> s = squarefree_part(f);
  int extra = 0;
  if (lo.infty == 0 && s.eval(lo.value) == 0) {
    ++extra;
    s = divide_exact(s, Poly1<R>{-lo.value, R(1)}).second;
  }
  if (hi.infty == 0 && !s.is_zero() && s.degree() >= 1 && s.eval(hi.value) == 0) {
    ++extra;
    s = divide_exact(s, Poly1<R>{-hi.value, R(1)}).second;
  }
  if (s.degree() < 1) return extra;
  auto chain = signed_remainder_chain(s, s.derivative());
  return extra + sign_variations(chain, lo) - sign_variations(chain, hi);
}

// Real roots counted with multiplicity on [lo, hi], via the gcd deflation
// chain f, gcd(f,f'), gcd(gcd,...),...: level i counts roots of mult > i.
template <RealScalar R>
int count_real_roots_mult(const Poly1<R>& f, const XPoint<R>& lo, const XPoint<R>& hi) {
  if (f.is_zero()) throw ZeroPolynomialError("count_real_roots_mult: zero polynomial");
  Poly1<R> g = f;
  int total = 0;
  while (g.degree() >= 1) {
    total += count_real_roots_distinct(g, lo, hi);
    g = gcd(g, g.derivative());
  }
  return total;
}

struct RealRootCount {
  int distinct = 0;
  int with_multiplicity = 0;
};

template <RealScalar R>
RealRootCount real_root_count_interval(const Poly1<R>& f, const XPoint<R>& lo,
                                       const XPoint<R>& hi) {
  return {count_real_roots_distinct(f, lo, hi), count_real_roots_mult(f, lo, hi)};
}

template <RealScalar R>
RealRootCount real_root_count_line(const Poly1<R>& f) {
  return real_root_count_interval(f, XPoint<R>::minus_inf(), XPoint<R>::plus_inf());
}

// Root counts of a complex polynomial relative to the real axis.
struct HalfPlaneCount {
  int upper = 0;          // Im > 0, with multiplicity
  int lower = 0;          // Im < 0, with multiplicity
  int real_distinct = 0;  // Im = 0
  int real_mult = 0;
};

// Exact location counts via the common real factor + Cauchy index of the
// coprime part (argument principle along the real axis). The index formula
// N+ = (deg - Ind(g/f))/2 needs deg(Re) = deg(h), arranged by rescaling h
// with the conjugate of its leading coefficient (roots are unchanged).
template <RealScalar R>
HalfPlaneCount halfplane_root_count(const Poly1<Cx<R>>& h_in) {
  static_assert(is_exact_v<R>, "halfplane_root_count requires the exact backend");
  if (h_in.is_zero()) throw ZeroPolynomialError("halfplane_root_count: zero polynomial");
  HalfPlaneCount out;
  if (h_in.degree() == 0) return out;

  Poly1<Cx<R>> h = h_in.leading().conj() * h_in;
  Poly1<R> f = real_part(h), g = imag_part(h);
  Poly1<R> d = gcd(f, g);  // g may be zero; gcd(f, 0) = monic f

  Poly1<Cx<R>> h1 = divide_exact(h, complexify(d)).second;
  Poly1<R> f1 = real_part(h1), g1 = imag_part(h1);
  int n1 = h1.degree();
  if (n1 >= 1) {
    int ind = cauchy_index(f1, g1);
    if ((n1 - ind) % 2 != 0)
      throw std::logic_error("halfplane_root_count: index parity violation");
    out.upper += (n1 - ind) / 2;
    out.lower += (n1 + ind) / 2;
  }
  if (d.degree() >= 1) {
    RealRootCount rc = real_root_count_line(d);
    out.real_distinct = rc.distinct;
    out.real_mult = rc.with_multiplicity;
    int pairs = (d.degree() - rc.with_multiplicity) / 2;
    out.upper += pairs;
    out.lower += pairs;
  }
  return out;
}

}  // namespace preserver
