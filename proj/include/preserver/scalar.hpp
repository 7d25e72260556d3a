#pragma once

// Scalar backends: exact rationals (boost cpp_rational) and double with an
// explicit tolerance context. Complex scalars are a local template because
// std::complex is only specified for floating-point types.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace preserver {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept RealScalar = std::same_as<T, Rat> || std::same_as<T, double>;

template <RealScalar R>
inline constexpr bool is_exact_v = std::same_as<R, Rat>;

enum class Backend { exact, floating };

template <RealScalar R>
constexpr Backend backend_of() {
  return is_exact_v<R> ? Backend::exact : Backend::floating;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

// Exact binary-to-rational embedding; every double is a rational.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  return Rat(x);
}

inline Rat to_rat(const Rat& x) { return x; }
inline Rat to_rat(double x) { return rat_from_double(x); }

// Tolerance context for the float backend. Exact backends ignore it.
struct Tolerance {
  double eps = 1e-9;
};

inline int sign_of(const Rat& x, const Tolerance& = {}) {
  return x.sign();
}
inline int sign_of(double x, const Tolerance& tol = {}) {
  if (std::abs(x) <= tol.eps) return 0;
  return x > 0 ? 1 : -1;
}

template <RealScalar R>
struct Cx {
  R re{};
  R im{};

  Cx() = default;
  Cx(R r) : re(std::move(r)) {}
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  Cx(int r) : re(r) {}

  static Cx i() { return Cx(R(0), R(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Cx conj() const { return Cx(re, -im); }
  R norm() const { return re * re + im * im; }

  friend Cx operator+(const Cx& a, const Cx& b) { return Cx(a.re + b.re, a.im + b.im); }
  friend Cx operator-(const Cx& a, const Cx& b) { return Cx(a.re - b.re, a.im - b.im); }
  friend Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    R n = b.norm();
    if (n == 0) throw std::domain_error("Cx: division by zero");
    Cx c = a * b.conj();
    return Cx(c.re / n, c.im / n);
  }
  Cx& operator+=(const Cx& b) { *this = *this + b; return *this; }
  Cx& operator-=(const Cx& b) { *this = *this - b; return *this; }
  Cx& operator*=(const Cx& b) { *this = *this * b; return *this; }
  Cx& operator/=(const Cx& b) { *this = *this / b; return *this; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
};

using CQ = Cx<Rat>;
using CD = Cx<double>;

template <class K>
struct scalar_traits;

template <RealScalar R>
struct scalar_traits<R> {
  using real_type = R;
  static constexpr bool is_complex = false;
  static constexpr Backend backend = backend_of<R>();
};

template <RealScalar R>
struct scalar_traits<Cx<R>> {
  using real_type = R;
  static constexpr bool is_complex = true;
  static constexpr Backend backend = backend_of<R>();
};

template <class K>
concept Scalar = RealScalar<K> || std::same_as<K, CQ> || std::same_as<K, CD>;

template <Scalar K>
using real_of = typename scalar_traits<K>::real_type;

template <Scalar K>
inline constexpr bool scalar_exact_v = is_exact_v<real_of<K>>;

template <Scalar K>
bool scalar_is_zero(const K& x) {
  if constexpr (scalar_traits<K>::is_complex) return x.is_zero();
  else return x == K(0);
}

template <RealScalar R>
std::complex<double> to_std_complex(const Cx<R>& z) {
  return {to_double(z.re), to_double(z.im)};
}
template <RealScalar R>
std::complex<double> to_std_complex(const R& x) {
  return {to_double(x), 0.0};
}

inline CD to_cd(const std::complex<double>& z) { return CD(z.real(), z.imag()); }

template <RealScalar R>
CD to_cd(const Cx<R>& z) {
  return CD(to_double(z.re), to_double(z.im));
}

inline CQ cq_from_cd(const CD& z) { return CQ(rat_from_double(z.re), rat_from_double(z.im)); }

template <RealScalar R>
Cx<R> cx_real(const R& x) { return Cx<R>(x); }

// Magnitude helpers used by float-backend pivoting and witness checks.
inline double abs_approx(const Rat& x) { return std::abs(to_double(x)); }
inline double abs_approx(double x) { return std::abs(x); }
template <RealScalar R>
double abs_approx(const Cx<R>& z) { return std::abs(to_std_complex(z)); }

inline std::string rat_to_string(const Rat& x) { return x.str(); }

inline Rat rat_from_string(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
  }
}

}  // namespace preserver
