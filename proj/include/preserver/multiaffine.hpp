#pragma once

// Multiaffine polynomials in x_1..x_d: degree at most one in each variable,
// stored as subset-bitmask -> coefficient. Large enough for polarization
// work at the degrees the decision procedures use (d <= 63).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "preserver/combinatorics.hpp"
#include "preserver/scalar.hpp"

namespace preserver {

template <Scalar K>
struct MultiAffine {
  int nvars = 0;
  std::map<std::uint64_t, K> terms;  // bitmask of variables present -> coeff

  MultiAffine() = default;
  explicit MultiAffine(int d) : nvars(d) {
    if (d < 0 || d > 63) throw std::invalid_argument("MultiAffine: need 0 <= nvars <= 63");
  }

  static MultiAffine constant(int d, K c) {
    MultiAffine m(d);
    if (!scalar_is_zero(c)) m.terms[0] = c;
    return m;
  }
  static MultiAffine variable(int d, int i) {
    MultiAffine m(d);
    m.terms[std::uint64_t{1} << i] = K(1);
    return m;
  }

  bool is_zero() const { return terms.empty(); }

  K coeff(std::uint64_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? K(0) : it->second;
  }

  MultiAffine& add_term(std::uint64_t mask, K c) {
    auto it = terms.find(mask);
    K s = (it == terms.end() ? K(0) : it->second) + c;
    if (scalar_is_zero(s))
      terms.erase(mask);
    else
      terms[mask] = s;
    return *this;
  }

  MultiAffine operator+(const MultiAffine& o) const {
    MultiAffine out = *this;
    for (const auto& [m, c] : o.terms) out.add_term(m, c);
    return out;
  }
  MultiAffine operator-(const MultiAffine& o) const {
    MultiAffine out = *this;
    for (const auto& [m, c] : o.terms) out.add_term(m, K(0) - c);
    return out;
  }
  MultiAffine operator*(const K& s) const {
    MultiAffine out(nvars);
    if (scalar_is_zero(s)) return out;
    for (const auto& [m, c] : terms) out.terms[m] = c * s;
    return out;
  }

  // Product is only multiaffine when the supports are disjoint.
  MultiAffine operator*(const MultiAffine& o) const {
    MultiAffine out(nvars);
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) {
        if (m1 & m2)
          throw std::invalid_argument("MultiAffine: product of overlapping supports");
        out.add_term(m1 | m2, c1 * c2);
      }
    return out;
  }

  K eval(const std::vector<K>& x) const {
    if (static_cast<int>(x.size()) != nvars)
      throw std::invalid_argument("MultiAffine::eval: wrong point dimension");
    K acc(0);
    for (const auto& [mask, c] : terms) {
      K t = c;
      for (int i = 0; i < nvars; ++i)
        if (mask & (std::uint64_t{1} << i)) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  // Substitute x_i = v; the variable slot stays (coefficients fold down).
  MultiAffine substitute(int i, K v) const {
    MultiAffine out(nvars);
    std::uint64_t bit = std::uint64_t{1} << i;
    for (const auto& [mask, c] : terms) {
      if (mask & bit)
        out.add_term(mask & ~bit, c * v);
      else
        out.add_term(mask, c);
    }
    return out;
  }

  bool operator==(const MultiAffine& o) const { return nvars == o.nvars && terms == o.terms; }
};

template <Scalar K>
MultiAffine<K> elementary_symmetric(int d, int k) {
  if (k < 0 || k > d) return MultiAffine<K>(std::max(d, 0));
  MultiAffine<K> out(d);
  // enumerate k-subsets of {0..d-1} via Gosper's hack
  if (k == 0) {
    out.terms[0] = K(1);
    return out;
  }
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  std::uint64_t limit = std::uint64_t{1} << d;
  while (mask < limit) {
    out.terms[mask] = K(1);
    std::uint64_t c = mask & -mask;
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

}  // namespace preserver
