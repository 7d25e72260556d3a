#pragma once

#include <stdexcept>

#include "preserver/scalar.hpp"

namespace preserver {

// Exact in K; for K = double the values are integers well below 2^53
// at every degree this library handles.
template <typename K>
K factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  K acc(1);
  for (int i = 2; i <= n; ++i) acc = acc * K(i);
  return acc;
}

template <typename K>
K binomial(int n, int k) {
  if (k < 0 || k > n) return K(0);
  if (k > n - k) k = n - k;
  K acc(1);
  for (int i = 1; i <= k; ++i) acc = acc * K(n - k + i) / K(i);
  return acc;
}

// (n)_k = n (n-1) ... (n-k+1)
template <typename K>
K falling_factorial(int n, int k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: negative k");
  K acc(1);
  for (int i = 0; i < k; ++i) acc = acc * K(n - i);
  return acc;
}

}  // namespace preserver
