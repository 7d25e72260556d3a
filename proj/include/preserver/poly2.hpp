#pragma once

// Bivariate polynomials over a scalar field K, stored w-major: entry k is
// the coefficient of w^k as a Poly1 in z. Invariant: the top entry is
// nonzero (zero polynomial = empty vector).

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "preserver/poly.hpp"

namespace preserver {

template <Scalar K>
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(std::vector<Poly1<K>> by_w) : by_w_(std::move(by_w)) { trim(); }

  static Poly2 zero() { return Poly2(); }
  static Poly2 constant(K c) { return monomial(0, 0, std::move(c)); }
  static Poly2 monomial(int i, int j, K c) {
    Poly2 f;
    if (scalar_is_zero(c)) return f;
    if (i < 0 || j < 0) throw std::invalid_argument("Poly2::monomial: negative exponent");
    f.by_w_.resize(j + 1);
    f.by_w_[j] = Poly1<K>::monomial(i, std::move(c));
    return f;
  }
  static Poly2 from_z(const Poly1<K>& f) { return f.is_zero() ? Poly2() : Poly2({f}); }
  static Poly2 from_w(const Poly1<K>& f) {
    Poly2 g;
    for (int k = 0; k <= f.degree(); ++k) g.add_term(0, k, f.coeff(k));
    return g;
  }

  bool is_zero() const { return by_w_.empty(); }

  int deg_w() const { return by_w_.empty() ? kNegInfDegree : static_cast<int>(by_w_.size()) - 1; }
  int deg_z() const {
    int d = kNegInfDegree;
    for (const auto& q : by_w_) d = std::max(d, q.degree());
    return d;
  }
  int total_degree() const {
    int d = kNegInfDegree;
    for (int k = 0; k < static_cast<int>(by_w_.size()); ++k)
      if (!by_w_[k].is_zero()) d = std::max(d, by_w_[k].degree() + k);
    return d;
  }

  K coeff(int i, int j) const {
    if (j < 0 || j >= static_cast<int>(by_w_.size())) return K(0);
    return by_w_[j].coeff(i);
  }
  const Poly1<K>& coeff_w(int k) const {
    static const Poly1<K> kZero{};
    if (k < 0 || k >= static_cast<int>(by_w_.size())) return kZero;
    return by_w_[k];
  }
  const std::vector<Poly1<K>>& rows() const { return by_w_; }

  Poly2& add_term(int i, int j, K c) {
    if (scalar_is_zero(c)) return *this;
    if (i < 0 || j < 0) throw std::invalid_argument("Poly2::add_term: negative exponent");
    if (j >= static_cast<int>(by_w_.size())) by_w_.resize(j + 1);
    by_w_[j] = by_w_[j] + Poly1<K>::monomial(i, std::move(c));
    trim();
    return *this;
  }

  Poly2 operator+(const Poly2& o) const {
    std::vector<Poly1<K>> out(std::max(by_w_.size(), o.by_w_.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = coeff_w(static_cast<int>(k)) + o.coeff_w(static_cast<int>(k));
    return Poly2(std::move(out));
  }
  Poly2 operator-(const Poly2& o) const {
    std::vector<Poly1<K>> out(std::max(by_w_.size(), o.by_w_.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = coeff_w(static_cast<int>(k)) - o.coeff_w(static_cast<int>(k));
    return Poly2(std::move(out));
  }
  Poly2 operator*(const Poly2& o) const {
    if (is_zero() || o.is_zero()) return Poly2();
    std::vector<Poly1<K>> out(by_w_.size() + o.by_w_.size() - 1);
    for (std::size_t a = 0; a < by_w_.size(); ++a) {
      if (by_w_[a].is_zero()) continue;
      for (std::size_t b = 0; b < o.by_w_.size(); ++b)
        out[a + b] = out[a + b] + by_w_[a] * o.by_w_[b];
    }
    return Poly2(std::move(out));
  }
  Poly2 operator*(const K& s) const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    for (const auto& q : by_w_) out.push_back(q * s);
    return Poly2(std::move(out));
  }
  friend Poly2 operator*(const K& s, const Poly2& f) { return f * s; }
  bool operator==(const Poly2& o) const { return by_w_ == o.by_w_; }

  K eval(const K& z, const K& w) const {
    K acc(0);
    for (std::size_t k = by_w_.size(); k-- > 0;) acc = acc * w + by_w_[k].eval(z);
    return acc;
  }
  // Fix w = w0, leaving a polynomial in z.
  Poly1<K> slice_w(const K& w0) const {
    Poly1<K> acc;
    for (std::size_t k = by_w_.size(); k-- > 0;) acc = acc * w0 + by_w_[k];
    return acc;
  }
  // Fix z = z0, leaving a polynomial in w.
  Poly1<K> slice_z(const K& z0) const {
    std::vector<K> c;
    c.reserve(by_w_.size());
    for (const auto& q : by_w_) c.push_back(q.eval(z0));
    return Poly1<K>(std::move(c));
  }

  Poly2 swap_vars() const {
    Poly2 out;
    int dz = deg_z();
    if (dz == kNegInfDegree) return out;
    out.by_w_.resize(dz + 1);
    for (int j = 0; j < static_cast<int>(by_w_.size()); ++j)
      for (int i = 0; i <= by_w_[j].degree(); ++i) {
        K c = by_w_[j].coeff(i);
        if (!scalar_is_zero(c)) out.by_w_[i] = out.by_w_[i] + Poly1<K>::monomial(j, c);
      }
    out.trim();
    return out;
  }

  Poly2 reflect_z() const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    for (const auto& q : by_w_) out.push_back(q.reflect());
    return Poly2(std::move(out));
  }
  Poly2 reflect_w() const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    for (std::size_t k = 0; k < by_w_.size(); ++k)
      out.push_back(k % 2 ? by_w_[k] * K(-1) : by_w_[k]);
    return Poly2(std::move(out));
  }
  Poly2 reflect_both() const { return reflect_z().reflect_w(); }

  Poly2 derivative_z() const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    for (const auto& q : by_w_) out.push_back(q.derivative());
    return Poly2(std::move(out));
  }
  Poly2 derivative_w() const {
    if (by_w_.size() <= 1) return Poly2();
    std::vector<Poly1<K>> out(by_w_.size() - 1);
    for (std::size_t k = 1; k < by_w_.size(); ++k) out[k - 1] = by_w_[k] * K(static_cast<int>(k));
    return Poly2(std::move(out));
  }

  Poly2 scale_z(const K& c) const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    for (const auto& q : by_w_) out.push_back(q.scale_arg(c));
    return Poly2(std::move(out));
  }
  Poly2 scale_w(const K& c) const {
    std::vector<Poly1<K>> out;
    out.reserve(by_w_.size());
    K p(1);
    for (const auto& q : by_w_) {
      out.push_back(q * p);
      p = p * c;
    }
    return Poly2(std::move(out));
  }

  // f(z,w) = h(z w) exactly; returns h when the support is diagonal.
  std::optional<Poly1<K>> diagonal_profile() const {
    std::vector<K> h;
    for (int j = 0; j < static_cast<int>(by_w_.size()); ++j)
      for (int i = 0; i <= by_w_[j].degree(); ++i) {
        K c = by_w_[j].coeff(i);
        if (scalar_is_zero(c)) continue;
        if (i != j) return std::nullopt;
        if (static_cast<int>(h.size()) <= j) h.resize(j + 1, K(0));
        h[j] = c;
      }
    return Poly1<K>(std::move(h));
  }

  bool is_homogeneous() const {
    if (is_zero()) return true;
    int d = total_degree();
    for (int j = 0; j < static_cast<int>(by_w_.size()); ++j)
      for (int i = 0; i <= by_w_[j].degree(); ++i)
        if (!scalar_is_zero(by_w_[j].coeff(i)) && i + j != d) return false;
    return true;
  }

 private:
  void trim() {
    while (!by_w_.empty() && by_w_.back().is_zero()) by_w_.pop_back();
  }

  std::vector<Poly1<K>> by_w_;
};

// gcd over z of the w-coefficients: the z-only factor of f. Field scalars only.
template <Scalar K>
Poly1<K> content_in_z(const Poly2<K>& f) {
  Poly1<K> g;
  for (const auto& q : f.rows()) g = gcd(g, q);
  return g;
}
template <Scalar K>
Poly1<K> content_in_w(const Poly2<K>& f) {
  return content_in_z(f.swap_vars());
}

// Divide every w-coefficient by c(z); throws unless the division is exact.
template <Scalar K>
Poly2<K> divide_exact_z(const Poly2<K>& f, const Poly1<K>& c) {
  std::vector<Poly1<K>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) {
    auto [ok, quot] = divide_exact(q, c);
    if (!ok) throw std::invalid_argument("divide_exact_z: not a factor");
    out.push_back(std::move(quot));
  }
  return Poly2<K>(std::move(out));
}

template <Scalar K>
Poly2<K> pow2(const Poly2<K>& f, int k) {
  if (k < 0) throw std::invalid_argument("pow2: negative exponent");
  Poly2<K> acc = Poly2<K>::constant(K(1));
  Poly2<K> base = f;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

template <RealScalar R>
Poly2<Cx<R>> complexify(const Poly2<R>& f) {
  std::vector<Poly1<Cx<R>>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(complexify(q));
  return Poly2<Cx<R>>(std::move(out));
}

template <RealScalar R>
bool is_real_poly2(const Poly2<Cx<R>>& f) {
  for (const auto& q : f.rows())
    if (!is_real_poly(q)) return false;
  return true;
}
template <RealScalar R>
Poly2<R> real_part(const Poly2<Cx<R>>& f) {
  std::vector<Poly1<R>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(real_part(q));
  return Poly2<R>(std::move(out));
}
template <RealScalar R>
Poly2<R> imag_part(const Poly2<Cx<R>>& f) {
  std::vector<Poly1<R>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(imag_part(q));
  return Poly2<R>(std::move(out));
}
template <RealScalar R>
Poly2<Cx<R>> conj_coeffs(const Poly2<Cx<R>>& f) {
  std::vector<Poly1<Cx<R>>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(conj_coeffs(q));
  return Poly2<Cx<R>>(std::move(out));
}

inline Poly2<CD> to_float(const Poly2<CQ>& f) {
  std::vector<Poly1<CD>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(to_float(q));
  return Poly2<CD>(std::move(out));
}
inline Poly2<CQ> to_exact(const Poly2<CD>& f) {
  std::vector<Poly1<CQ>> out;
  out.reserve(f.rows().size());
  for (const auto& q : f.rows()) out.push_back(to_exact(q));
  return Poly2<CQ>(std::move(out));
}

template <Scalar K>
double coeff_scale(const Poly2<K>& f) {
  double m = 0.0;
  for (const auto& q : f.rows()) m = std::max(m, coeff_scale(q));
  return m;
}

}  // namespace preserver
