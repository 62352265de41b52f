#pragma once
// Test-only brute-force references. Everything here runs in long double and
// shares no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using real = long double;

inline real pochhammer(real a, real x, int k) {
  real p = 1;
  for (int i = 0; i < k; ++i)
    p *= 1 - a * std::pow(x, static_cast<real>(i));
  return p;
}

// f_k = c q^k prod_{i=1}^{k-1}(1 - c q^i), straight from the definition.
inline real pmf(real c, real q, int k) {
  real p = c * std::pow(q, static_cast<real>(k));
  for (int i = 1; i < k; ++i)
    p *= 1 - c * std::pow(q, static_cast<real>(i));
  return p;
}

// P(Y_n = 1) by summing over every composition of n into positive gaps.
inline real renewal_by_paths(real c, real q, int n) {
  if (n == 0)
    return 1;
  real total = 0;
  std::function<void(int, real)> walk = [&](int remaining, real weight) {
    if (remaining == 0) {
      total += weight;
      return;
    }
    for (int k = 1; k <= remaining; ++k)
      walk(remaining - k, weight * pmf(c, q, k));
  };
  walk(n, 1);
  return total;
}

// Plain partial sum of sum_{k=1}^{terms} scale^k f_k.
inline real scaled_pmf_sum(real c, real q, real scale, int terms) {
  real sum = 0, prod = 1, geo = 1;
  for (int k = 1; k <= terms; ++k) {
    geo *= scale * q;
    sum += c * geo * prod;
    prod *= 1 - c * std::pow(q, static_cast<real>(k));
  }
  return sum;
}

// Root of a monotone function by plain bisection in long double.
inline real bisect(const std::function<real(real)> &f, real lo, real hi, int iters = 200) {
  const bool rising = f(hi) > f(lo);
  for (int i = 0; i < iters; ++i) {
    const real mid = (lo + hi) / 2;
    if ((f(mid) > 0) == rising)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

} // namespace oracle
