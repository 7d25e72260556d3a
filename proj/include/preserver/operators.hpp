#pragma once

// Linear operators on the space of polynomials of degree <= n, stored as
// their action on the monomial basis (column k = T(z^k)). Symbols, the
// conjugated operator S = phi_m^{-1} T phi_n, and column-space analysis.

#include <optional>
#include <vector>

#include "preserver/combinatorics.hpp"
#include "preserver/errors.hpp"
#include "preserver/mobius.hpp"
#include "preserver/poly.hpp"
#include "preserver/poly2.hpp"

namespace preserver {

template <Scalar K>
class LinearOperator {
 public:
  LinearOperator() = default;
  static LinearOperator from_columns(std::vector<Poly1<K>> cols) {
    if (cols.empty()) throw DimensionMismatchError("LinearOperator: no columns");
    LinearOperator t;
    t.cols_ = std::move(cols);
    return t;
  }
  static LinearOperator identity(int n) {
    std::vector<Poly1<K>> cols;
    for (int k = 0; k <= n; ++k) cols.push_back(Poly1<K>::monomial(k, K(1)));
    return from_columns(std::move(cols));
  }
  static LinearOperator zero(int n) {
    return from_columns(std::vector<Poly1<K>>(n + 1));
  }
  static LinearOperator from_multiplier(const std::vector<K>& lambda) {
    std::vector<Poly1<K>> cols;
    for (std::size_t k = 0; k < lambda.size(); ++k)
      cols.push_back(Poly1<K>::monomial(static_cast<int>(k), lambda[k]));
    return from_columns(std::move(cols));
  }
  // T = sum_k Q_k(z) d^k/dz^k acting on degree <= n.
  static LinearOperator from_diffop(const std::vector<Poly1<K>>& qs, int n) {
    std::vector<Poly1<K>> cols;
    for (int j = 0; j <= n; ++j) {
      Poly1<K> img;
      for (int k = 0; k <= j && k < static_cast<int>(qs.size()); ++k)
        img = img + qs[k] * Poly1<K>::monomial(j - k, falling_factorial<K>(j, k));
      cols.push_back(std::move(img));
    }
    return from_columns(std::move(cols));
  }

  int n() const { return static_cast<int>(cols_.size()) - 1; }
  // Tight codomain degree; NEG_INF sentinel for the zero operator.
  int m() const {
    int m = kNegInfDegree;
    for (const auto& c : cols_) m = std::max(m, c.degree());
    return m;
  }
  bool is_zero() const { return m() == kNegInfDegree; }
  const std::vector<Poly1<K>>& columns() const { return cols_; }
  const Poly1<K>& column(int k) const { return cols_.at(k); }

  Poly1<K> apply(const Poly1<K>& f) const {
    if (f.degree() > n()) throw DegreeExceededError("LinearOperator::apply: deg f > n");
    Poly1<K> acc;
    for (int k = 0; k <= std::max(f.degree(), 0); ++k) {
      K c = f.coeff(k);
      if (!scalar_is_zero(c)) acc = acc + cols_[k] * c;
    }
    return acc;
  }
  // Act in z only; w coefficients ride along.
  Poly2<K> apply_ext2(const Poly2<K>& f) const {
    if (f.deg_z() > n()) throw DegreeExceededError("LinearOperator::apply_ext2: zdeg f > n");
    std::vector<Poly1<K>> rows;
    rows.reserve(f.rows().size());
    for (const auto& q : f.rows()) rows.push_back(apply(q));
    return Poly2<K>(std::move(rows));
  }

  // Restriction to degree <= k inputs (first k+1 columns).
  LinearOperator truncate(int k) const {
    if (k < 0 || k > n()) throw DimensionMismatchError("LinearOperator::truncate: bad bound");
    return from_columns(std::vector<Poly1<K>>(cols_.begin(), cols_.begin() + k + 1));
  }

  LinearOperator operator+(const LinearOperator& o) const {
    if (n() != o.n()) throw DimensionMismatchError("LinearOperator: mismatched bounds");
    std::vector<Poly1<K>> cols;
    for (int k = 0; k <= n(); ++k) cols.push_back(cols_[k] + o.cols_[k]);
    return from_columns(std::move(cols));
  }
  LinearOperator operator*(const K& s) const {
    std::vector<Poly1<K>> cols;
    for (const auto& c : cols_) cols.push_back(c * s);
    return from_columns(std::move(cols));
  }
  bool operator==(const LinearOperator& o) const { return cols_ == o.cols_; }

  template <typename Real = typename scalar_traits<K>::real_type>
  bool is_real(const Tolerance& tol = {}) const {
    if constexpr (scalar_traits<K>::is_complex) {
      double scale = 0;
      for (const auto& c : cols_) scale = std::max(scale, coeff_scale(c));
      for (const auto& c : cols_)
        for (const auto& v : c.coeffs()) {
          if constexpr (scalar_exact_v<K>) {
            if (sign_of(v.im, Tolerance{0.0}) != 0) return false;
          } else {
            if (std::abs(to_double(v.im)) > tol.eps * scale) return false;
          }
        }
    }
    return true;
  }

 private:
  std::vector<Poly1<K>> cols_;
};

struct MultiplierSeq {
  std::vector<Rat> lambda;
};

template <Scalar K>
struct DiffOpForm {
  std::vector<Poly1<K>> qs;  // T = sum qs[k] d^k/dz^k
};

// P_k = (-1)^k T(z^k) / k!; truncation(n) = sum (n)_k P_k(z) w^k = T[(1-zw)^n].
template <Scalar K>
struct SymbolSeries {
  std::vector<Poly1<K>> p;

  Poly2<K> truncation(int n) const {
    if (n >= static_cast<int>(p.size()))
      throw DegreeExceededError("SymbolSeries::truncation: order beyond series");
    Poly2<K> acc;
    std::vector<Poly1<K>> rows;
    for (int k = 0; k <= n; ++k) rows.push_back(p[k] * falling_factorial<K>(n, k));
    return Poly2<K>(std::move(rows));
  }
  // Truncated product G_T(z,w) e^{zw}: w^t coefficient is
  // sum_{k<=t} P_k(z) z^{t-k} / (t-k)!.
  Poly2<K> exp_product(int order) const {
    std::vector<Poly1<K>> rows;
    for (int t = 0; t <= order; ++t) {
      Poly1<K> row;
      for (int k = 0; k <= t && k < static_cast<int>(p.size()); ++k)
        row = row + p[k] * Poly1<K>::monomial(t - k, K(1) / factorial<K>(t - k));
      rows.push_back(std::move(row));
    }
    return Poly2<K>(std::move(rows));
  }
};

template <Scalar K>
DiffOpForm<K> to_diffop(const LinearOperator<K>& t) {
  DiffOpForm<K> out;
  for (int j = 0; j <= t.n(); ++j) {
    Poly1<K> rem = t.column(j);
    for (int k = 0; k < j; ++k)
      rem = rem - out.qs[k] * Poly1<K>::monomial(j - k, falling_factorial<K>(j, k));
    out.qs.push_back(rem / factorial<K>(j));
  }
  return out;
}

template <Scalar K>
Poly2<K> plus_symbol(const LinearOperator<K>& t, int n) {
  if (n > t.n()) throw DegreeExceededError("plus_symbol: n beyond operator bound");
  Poly2<K> acc;
  for (int k = 0; k <= n; ++k) {
    Poly1<K> img = t.column(k) * binomial<K>(n, k);
    if (img.is_zero()) continue;
    acc = acc + Poly2<K>::from_z(img) * Poly2<K>::monomial(0, n - k, K(1));
  }
  return acc;
}

template <Scalar K>
Poly2<K> minus_symbol(const LinearOperator<K>& t, int n) {
  if (n > t.n()) throw DegreeExceededError("minus_symbol: n beyond operator bound");
  Poly2<K> acc;
  for (int k = 0; k <= n; ++k) {
    K sgn = ((n - k) % 2 == 0) ? K(1) : K(-1);
    Poly1<K> img = t.column(k) * (binomial<K>(n, k) * sgn);
    if (img.is_zero()) continue;
    acc = acc + Poly2<K>::from_z(img) * Poly2<K>::monomial(0, n - k, K(1));
  }
  return acc;
}

template <RealScalar R>
Poly2<Cx<R>> circ_symbol(const LinearOperator<Cx<R>>& t, int n, const Mobius<R>& m,
                         KernelSign sign = KernelSign::plus) {
  if (n > t.n()) throw DegreeExceededError("circ_symbol: n beyond operator bound");
  return t.apply_ext2(circ_symbol_kernel(m, n, sign));
}

template <Scalar K>
SymbolSeries<K> gt_series(const LinearOperator<K>& t, int order) {
  if (order > t.n()) throw DegreeExceededError("gt_series: order beyond operator bound");
  SymbolSeries<K> out;
  K sgn(1);
  for (int k = 0; k <= order; ++k) {
    out.p.push_back(t.column(k) * (sgn / factorial<K>(k)));
    sgn = sgn * K(-1);
  }
  return out;
}

template <RealScalar R>
LinearOperator<Cx<R>> conjugate_operator(const LinearOperator<Cx<R>>& t, const Mobius<R>& mob) {
  using C = Cx<R>;
  if (t.is_zero()) return t;
  int n = t.n(), m = t.m();
  std::vector<Poly1<C>> cols;
  for (int k = 0; k <= n; ++k) {
    Poly1<C> u = conjugate_poly(mob, n, Poly1<C>::monomial(k, C(1)));
    Poly1<C> v = t.apply(u);
    cols.push_back(conjugate_poly(mob, m, v, ConjDirection::inverse));
  }
  return LinearOperator<C>::from_columns(std::move(cols));
}

template <Scalar K>
struct RangeAnalysis {
  int rank = 0;
  std::vector<Poly1<K>> basis;  // first linearly independent columns
  // Direction eta with eta * T real-coefficiented; not normalized to unit
  // modulus (scaling preserves every zero locus); rotated reference
  // coefficient comes out real positive.
  std::optional<K> eta;
};

namespace detail {

template <Scalar K>
bool eliminate_against(std::vector<K>& v, const std::vector<std::vector<K>>& rows,
                       const std::vector<int>& pivots, const Tolerance& tol, double scale) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int p = pivots[r];
    if (scalar_is_zero(v[p])) continue;
    K factor = v[p] / rows[r][p];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] - factor * rows[r][i];
  }
  for (auto& x : v) {
    bool zero;
    if constexpr (scalar_exact_v<K>)
      zero = scalar_is_zero(x);
    else
      zero = abs_approx(x) <= tol.eps * (scale > 0 ? scale : 1.0);
    if (zero) x = K(0);
  }
  for (const auto& x : v)
    if (!scalar_is_zero(x)) return true;
  return false;
}

}  // namespace detail

template <Scalar K>
RangeAnalysis<K> range_analysis(const LinearOperator<K>& t, const Tolerance& tol = {}) {
  RangeAnalysis<K> out;
  const int rows_n = std::max(t.m(), 0) + 1;
  double scale = 0;
  for (const auto& c : t.columns()) scale = std::max(scale, coeff_scale(c));

  std::vector<std::vector<K>> reduced;
  std::vector<int> pivots;
  for (const auto& col : t.columns()) {
    std::vector<K> v(rows_n, K(0));
    for (int i = 0; i <= col.degree() && i < rows_n; ++i) v[i] = col.coeff(i);
    if (col.is_zero()) continue;
    std::vector<K> w = v;
    if (!detail::eliminate_against(w, reduced, pivots, tol, scale)) continue;
    int p = 0;
    while (scalar_is_zero(w[p])) ++p;
    reduced.push_back(std::move(w));
    pivots.push_back(p);
    out.basis.push_back(col);
    ++out.rank;
  }

  // Common phase: candidate from the first nonzero coefficient, column-major.
  if constexpr (scalar_traits<K>::is_complex) {
    std::optional<K> candidate;
    for (const auto& col : t.columns()) {
      for (const auto& v : col.coeffs())
        if (!scalar_is_zero(v)) {
          candidate = v.conj();
          break;
        }
      if (candidate) break;
    }
    if (candidate) {
      bool ok = true;
      double cscale = abs_approx(*candidate) * scale;
      for (const auto& col : t.columns())
        for (const auto& v : col.coeffs()) {
          auto rotated = *candidate * v;
          if constexpr (scalar_exact_v<K>) {
            if (sign_of(rotated.im, Tolerance{0.0}) != 0) ok = false;
          } else {
            if (std::abs(to_double(rotated.im)) > tol.eps * (cscale > 0 ? cscale : 1.0))
              ok = false;
          }
          if (!ok) break;
        }
      if (ok) out.eta = candidate;
    }
  }
  return out;
}

// Direction eta (not unit-normalized) such that eta * f has real
// coefficients; the reference coefficient rotates to real positive.
template <RealScalar R>
std::optional<Cx<R>> real_phase(const Poly1<Cx<R>>& f, const Tolerance& tol = {}) {
  using C = Cx<R>;
  std::optional<C> candidate;
  for (const auto& v : f.coeffs())
    if (!scalar_is_zero(v)) {
      candidate = v.conj();
      break;
    }
  if (!candidate) return std::nullopt;  // zero polynomial: any phase works
  double scale = abs_approx(*candidate) * coeff_scale(f);
  for (const auto& v : f.coeffs()) {
    C rotated = *candidate * v;
    if constexpr (is_exact_v<R>) {
      if (sign_of(rotated.im, Tolerance{0.0}) != 0) return std::nullopt;
    } else {
      if (std::abs(to_double(rotated.im)) > tol.eps * (scale > 0 ? scale : 1.0))
        return std::nullopt;
    }
  }
  return candidate;
}

template <RealScalar R>
std::optional<Cx<R>> real_phase(const Poly2<Cx<R>>& f, const Tolerance& tol = {}) {
  using C = Cx<R>;
  std::optional<C> candidate;
  for (const auto& row : f.rows()) {
    for (const auto& v : row.coeffs())
      if (!scalar_is_zero(v)) {
        candidate = v.conj();
        break;
      }
    if (candidate) break;
  }
  if (!candidate) return std::nullopt;
  double scale = abs_approx(*candidate) * coeff_scale(f);
  for (const auto& row : f.rows())
    for (const auto& v : row.coeffs()) {
      C rotated = *candidate * v;
      if constexpr (is_exact_v<R>) {
        if (sign_of(rotated.im, Tolerance{0.0}) != 0) return std::nullopt;
      } else {
        if (std::abs(to_double(rotated.im)) > tol.eps * (scale > 0 ? scale : 1.0))
          return std::nullopt;
      }
    }
  return candidate;
}

inline LinearOperator<CD> to_float(const LinearOperator<CQ>& t) {
  std::vector<Poly1<CD>> cols;
  for (const auto& c : t.columns()) cols.push_back(to_float(c));
  return LinearOperator<CD>::from_columns(std::move(cols));
}

}  // namespace preserver
