#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

#include "preserver/errors.hpp"
#include "preserver/scalar.hpp"

namespace preserver {

// Degree of the zero polynomial.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

// Univariate polynomial over a scalar field K, coefficients indexed by degree.
// Invariant: no stored leading zero; the zero polynomial stores no coefficients.
template <Scalar K>
class Poly1 {
 public:
  Poly1() = default;
  Poly1(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
  explicit Poly1(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Poly1(const K& constant) : c_{constant} { trim(); }

  static Poly1 zero() { return Poly1(); }
  static Poly1 one() { return Poly1{K(1)}; }
  static Poly1 x() { return Poly1{K(0), K(1)}; }
  static Poly1 monomial(int k, const K& coeff = K(1)) {
    std::vector<K> c(static_cast<std::size_t>(k) + 1, K(0));
    c.back() = coeff;
    return Poly1(std::move(c));
  }

  int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const std::vector<K>& coeffs() const { return c_; }

  K leading() const {
    if (is_zero()) throw ZeroPolynomialError("Poly1::leading: zero polynomial");
    return c_.back();
  }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return Poly1(std::move(c));
  }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }
  friend Poly1 operator-(const Poly1& a) {
    std::vector<K> c(a.c_);
    for (auto& v : c) v = -v;
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return Poly1();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const K& s, const Poly1& a) {
    std::vector<K> c(a.c_);
    for (auto& v : c) v = s * v;
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const Poly1& a, const K& s) { return s * a; }
  Poly1 operator/(const K& s) const {
    std::vector<K> c(c_);
    for (auto& v : c) v = v / s;
    return Poly1(std::move(c));
  }
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly1& a, const Poly1& b) { return !(a == b); }

  Poly1 derivative() const {
    if (c_.size() <= 1) return Poly1();
    std::vector<K> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * K(static_cast<int>(i));
    return Poly1(std::move(c));
  }

  K eval(const K& z) const {
    K acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
  }

  // Taylor shift: returns f(z + s).
  Poly1 shift(const K& s) const {
    Poly1 acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * Poly1{s, K(1)} + Poly1{c_[i]};
    }
    return acc;
  }

  // f(c * z)
  Poly1 scale_arg(const K& c) const {
    std::vector<K> out(c_);
    K p(1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = out[i] * p;
      p = p * c;
    }
    return Poly1(std::move(out));
  }

  // f(-z)
  Poly1 reflect() const { return scale_arg(K(-1)); }

  Poly1 monic() const {
    if (is_zero()) throw ZeroPolynomialError("Poly1::monic: zero polynomial");
    return *this / leading();
  }

 private:
  std::vector<K> c_;

  void trim() {
    while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
  }
};

template <Scalar K>
std::pair<Poly1<K>, Poly1<K>> divmod(const Poly1<K>& a, const Poly1<K>& b) {
  if (b.is_zero()) throw ZeroPolynomialError("divmod: division by zero polynomial");
  Poly1<K> q, r = a;
  const int db = b.degree();
  const K lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    K c = r.leading() / lb;
    Poly1<K> t = Poly1<K>::monomial(k, c);
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

// Exact divisibility test; returns quotient when b | a.
template <Scalar K>
std::pair<bool, Poly1<K>> divide_exact(const Poly1<K>& a, const Poly1<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return {false, Poly1<K>()};
  return {true, q};
}

// Monic gcd via the Euclidean algorithm (valid over any field).
template <Scalar K>
Poly1<K> gcd(Poly1<K> a, Poly1<K> b) {
  if (a.is_zero() && b.is_zero()) return Poly1<K>();
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <Scalar K>
Poly1<K> pow(const Poly1<K>& f, int k) {
  Poly1<K> acc = Poly1<K>::one();
  for (int i = 0; i < k; ++i) acc = acc * f;
  return acc;
}

// --- real/complex structure helpers ---

template <RealScalar R>
Poly1<Cx<R>> complexify(const Poly1<R>& f) {
  std::vector<Cx<R>> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.emplace_back(v);
  return Poly1<Cx<R>>(std::move(c));
}

template <RealScalar R>
bool is_real_poly(const Poly1<Cx<R>>& f) {
  for (const auto& v : f.coeffs())
    if (!(v.im == R(0))) return false;
  return true;
}

template <RealScalar R>
Poly1<R> real_part(const Poly1<Cx<R>>& f) {
  std::vector<R> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(v.re);
  return Poly1<R>(std::move(c));
}

template <RealScalar R>
Poly1<R> imag_part(const Poly1<Cx<R>>& f) {
  std::vector<R> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(v.im);
  return Poly1<R>(std::move(c));
}

template <RealScalar R>
Poly1<Cx<R>> conj_coeffs(const Poly1<Cx<R>>& f) {
  std::vector<Cx<R>> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(v.conj());
  return Poly1<Cx<R>>(std::move(c));
}

inline Poly1<CD> to_float(const Poly1<CQ>& f) {
  std::vector<CD> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.emplace_back(to_double(v.re), to_double(v.im));
  return Poly1<CD>(std::move(c));
}
inline Poly1<double> to_float(const Poly1<Rat>& f) {
  std::vector<double> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(to_double(v));
  return Poly1<double>(std::move(c));
}
inline Poly1<CQ> to_exact(const Poly1<CD>& f) {
  std::vector<CQ> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(cq_from_cd(v));
  return Poly1<CQ>(std::move(c));
}
inline Poly1<Rat> to_exact_real(const Poly1<double>& f) {
  std::vector<Rat> c;
  c.reserve(f.coeffs().size());
  for (double v : f.coeffs()) c.push_back(rat_from_double(v));
  return Poly1<Rat>(std::move(c));
}

template <Scalar K>
double coeff_scale(const Poly1<K>& f) {
  double m = 0;
  for (const auto& v : f.coeffs()) m = std::max(m, abs_approx(v));
  return m;
}

}  // namespace preserver
