#pragma once

// Numeric root extraction: Aberth-Ehrlich simultaneous iteration plus
// Gerschgorin-type inclusion disks r_i = n|p(z_i)| / |lc * prod(z_i - z_j)|.
// Every root of p lies in the union of the disks, and a connected component
// of k disks contains exactly k roots, which is what the multiplicity
// clustering below relies on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "preserver/errors.hpp"
#include "preserver/poly.hpp"
#include "preserver/sturm.hpp"

namespace preserver {

struct Root {
  CD value;
  int multiplicity = 1;
  double radius = 0.0;  // certified inclusion radius around value
};

struct RootSet {
  std::vector<Root> roots;
  int degree = 0;  // multiplicities sum to this

  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

namespace detail {

using cxd = std::complex<double>;

inline cxd eval_poly(const std::vector<cxd>& c, cxd z) {
  cxd acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

inline std::vector<cxd> derive(const std::vector<cxd>& c) {
  if (c.size() <= 1) return {};
  std::vector<cxd> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * double(i);
  return d;
}

// Simultaneous iteration; coefficients by ascending degree, c.back() != 0.
inline std::vector<cxd> aberth(const std::vector<cxd>& c, double eps, int max_iter) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-c[0] / c[1]};

  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
  radius = 1.0 + radius;

  std::vector<cxd> z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * i / n + 0.7 / n + 0.41;
    double r = radius * std::pow(0.5 + double(i + 1) / (n + 1), 1.0);
    z[i] = std::polar(r, ang);
  }
  std::vector<cxd> d = derive(c);

  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      cxd p = eval_poly(c, z[i]);
      cxd dp = eval_poly(d, z[i]);
      if (std::abs(dp) < 1e-300) {
        z[i] += cxd(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
        worst = 1.0;
        continue;
      }
      cxd newton = p / dp;
      cxd s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cxd denom = 1.0 - newton * s;
      cxd step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst <= eps) return z;
  }
  throw NoConvergenceError("aberth: iteration budget exhausted");
}

inline std::vector<double> inclusion_radii(const std::vector<cxd>& c, const std::vector<cxd>& z) {
  const int n = static_cast<int>(z.size());
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double denom = std::abs(c.back());
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= std::abs(z[i] - z[j]);
    if (denom < 1e-300) {
      r[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    r[i] = n * std::abs(eval_poly(c, z[i])) / denom;
  }
  return r;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.re != b.value.re) return a.value.re < b.value.re;
    return a.value.im < b.value.im;
  });
}

template <Scalar K>
std::vector<cxd> to_cxd_coeffs(const Poly1<K>& f) {
  std::vector<cxd> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(to_std_complex(v));
  return c;
}

}  // namespace detail

// Roots of a float-backend polynomial with certified inclusion disks;
// overlapping disks merge into multiplicity clusters.
inline RootSet all_roots(const Poly1<CD>& f, const Tolerance& tol = {}, int max_iter = 600) {
  if (f.is_zero()) throw ZeroPolynomialError("all_roots: zero polynomial");
  if (f.degree() == 0) throw ConstantPolynomialError("all_roots: constant polynomial");

  std::vector<detail::cxd> c = detail::to_cxd_coeffs(f);
  int zero_mult = 0;
  while (c.size() > 1 && c.front() == detail::cxd(0)) {
    c.erase(c.begin());
    ++zero_mult;
  }

  RootSet out;
  out.degree = f.degree();
  if (zero_mult > 0) out.roots.push_back({CD(0.0, 0.0), zero_mult, 0.0});
  if (c.size() > 1) {
    auto z = detail::aberth(c, std::min(tol.eps, 1e-12), max_iter);
    auto rad = detail::inclusion_radii(c, z);
    const int n = static_cast<int>(z.size());
    detail::DSU dsu(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(z[i] - z[j]) <= rad[i] + rad[j]) dsu.unite(i, j);
    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[dsu.find(i)].push_back(i);
    for (const auto& g : groups) {
      if (g.empty()) continue;
      detail::cxd center = 0;
      for (int i : g) center += z[i];
      center /= double(g.size());
      double radius = 0;
      for (int i : g) radius = std::max(radius, std::abs(z[i] - center) + rad[i]);
      out.roots.push_back({to_cd(center), static_cast<int>(g.size()), radius});
    }
  }
  detail::sort_roots(out.roots);
  if (out.total_multiplicity() != out.degree)
    throw NoConvergenceError("all_roots: multiplicity bookkeeping failed");
  return out;
}

// Exact-backend wrapper: Yun square-free splitting first, so the numeric
// solves only ever see simple roots and the multiplicities are exact.
inline RootSet all_roots(const Poly1<CQ>& f, const Tolerance& tol = {}, int max_iter = 600) {
  if (f.is_zero()) throw ZeroPolynomialError("all_roots: zero polynomial");
  if (f.degree() == 0) throw ConstantPolynomialError("all_roots: constant polynomial");

  RootSet out;
  out.degree = f.degree();
  for (const auto& [factor, mult] : yun_squarefree(f)) {
    std::vector<detail::cxd> c = detail::to_cxd_coeffs(factor);
    int zero_mult = 0;
    while (c.size() > 1 && c.front() == detail::cxd(0)) {
      c.erase(c.begin());
      ++zero_mult;
    }
    if (zero_mult > 0) out.roots.push_back({CD(0.0, 0.0), mult, 0.0});
    if (c.size() > 1) {
      auto z = detail::aberth(c, std::min(tol.eps, 1e-12), max_iter);
      auto rad = detail::inclusion_radii(c, z);
      for (std::size_t i = 0; i < z.size(); ++i)
        out.roots.push_back({to_cd(z[i]), mult, rad[i]});
    }
  }
  detail::sort_roots(out.roots);
  if (out.total_multiplicity() != out.degree)
    throw NoConvergenceError("all_roots: multiplicity bookkeeping failed");
  return out;
}

inline RootSet all_roots(const Poly1<Rat>& f, const Tolerance& tol = {}, int max_iter = 600) {
  return all_roots(complexify(f), tol, max_iter);
}
inline RootSet all_roots(const Poly1<double>& f, const Tolerance& tol = {}, int max_iter = 600) {
  std::vector<CD> c;
  for (double v : f.coeffs()) c.emplace_back(v, 0.0);
  return all_roots(Poly1<CD>(std::move(c)), tol, max_iter);
}

}  // namespace preserver
