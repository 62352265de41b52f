#include "frogcrit/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frogcrit/errors.hpp"
#include "running_product.hpp"

namespace frogcrit {

namespace {

// f_1..f_N, index 0 unused.
std::vector<double> pmf_table(const HazardSpec &spec, std::int64_t horizon, double scale = 1.0) {
  std::vector<double> f(static_cast<std::size_t>(horizon) + 1, 0.0);
  detail::RunningSurvival survival(spec.c(), spec.q());
  const double ratio = scale * spec.q();
  double geometric = 1.0; // (scale q)^k
  for (std::int64_t k = 1; k <= horizon; ++k) {
    geometric *= ratio;
    f[static_cast<std::size_t>(k)] = spec.c() * geometric * survival.value();
    survival.advance();
  }
  return f;
}

double convolve_step(const std::vector<double> &f, const std::vector<double> &v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k)
    acc += f[k] * v[n - k];
  return acc;
}

// Sign of F(alpha) - 1, resolved as soon as the partial sum or its tail bound decides it.
int compare_generating_function_to_one(const HazardSpec &spec, double alpha) {
  const double c = spec.c();
  const double ratio = alpha * spec.q();
  detail::RunningSurvival survival(c, spec.q());
  double geometric = 1.0;
  double sum = 0.0;
  constexpr std::int64_t kMaxTerms = 200'000'000;
  for (std::int64_t k = 1; k <= kMaxTerms; ++k) {
    geometric *= ratio;
    sum += c * geometric * survival.value();
    survival.advance();
    if (sum > 1.0)
      return 1;
    const double tail = c * geometric * ratio / (1.0 - ratio);
    if (sum + tail < 1.0)
      return -1;
    if (tail < 1e-17)
      return sum < 1.0 ? -1 : (sum > 1.0 ? 1 : 0);
  }
  throw BracketError("generating function did not resolve against 1 within the term budget");
}

} // namespace

RenewalProbs::RenewalProbs(HazardSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.empty())
    throw DomainError("RenewalProbs requires at least u_0");
}

const char *to_string(Growth g) noexcept {
  switch (g) {
  case Growth::Subcritical:
    return "subcritical";
  case Growth::Supercritical:
    return "supercritical";
  case Growth::Indeterminate:
    return "indeterminate";
  }
  return "unknown";
}

RenewalProbs renewal_probabilities(const HazardSpec &spec, std::int64_t horizon) {
  if (horizon < 0)
    throw DomainError("renewal_probabilities requires N >= 0");
  return RenewalProbs(spec, scaled_renewal(spec, 1.0, horizon));
}

std::vector<double> scaled_renewal(const HazardSpec &spec, double scale, std::int64_t horizon) {
  if (horizon < 0)
    throw DomainError("scaled_renewal requires N >= 0");
  if (!(scale > 0.0))
    throw DomainError("scaled_renewal requires scale > 0");
  const auto f = pmf_table(spec, horizon, scale);
  std::vector<double> v(static_cast<std::size_t>(horizon) + 1, 0.0);
  v[0] = 1.0;
  for (std::size_t n = 1; n < v.size(); ++n)
    v[n] = convolve_step(f, v, n);
  return v;
}

std::pair<double, std::int64_t> generating_function_terms(const HazardSpec &spec, double alpha,
                                                          double tol) {
  if (!(tol > 0.0))
    throw DomainError("generating_function requires tol > 0");
  if (!(alpha > 0.0))
    throw DomainError("generating_function requires alpha > 0");
  const double ratio = alpha * spec.q();
  if (ratio >= 1.0)
    throw DivergenceError("generating function diverges: alpha*q = " + std::to_string(ratio) +
                          " >= 1");
  const double c = spec.c();
  detail::RunningSurvival survival(c, spec.q());
  double geometric = 1.0;
  double sum = 0.0;
  std::int64_t k = 0;
  do {
    ++k;
    geometric *= ratio;
    sum += c * geometric * survival.value();
    survival.advance();
  } while (c * geometric * ratio / (1.0 - ratio) >= tol);
  return {sum, k};
}

double generating_function(const HazardSpec &spec, double alpha, double tol) {
  return generating_function_terms(spec, alpha, tol).first;
}

RateResult convergence_rate(const HazardSpec &spec, double tol) {
  if (!(tol > 0.0))
    throw DomainError("convergence_rate requires tol > 0");
  const double radius = 1.0 / spec.q();
  double lo = 1.0 + 1e-12;
  if (compare_generating_function_to_one(spec, lo) >= 0)
    throw BracketError("F(1) is numerically indistinguishable from 1; defect mass too small");

  // Approach the radius of convergence geometrically until F exceeds 1.
  double hi = 0.0;
  for (int j = 1; j <= 60; ++j) {
    const double alpha = radius - (radius - 1.0) * std::ldexp(1.0, -j);
    if (!(alpha < radius))
      break;
    if (compare_generating_function_to_one(spec, alpha) > 0) {
      hi = alpha;
      break;
    }
    lo = alpha;
  }
  if (hi == 0.0)
    throw BracketError("no alpha in (1, 1/q) with F(alpha) > 1");

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const int s = compare_generating_function_to_one(spec, mid);
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    (s < 0 ? lo : hi) = mid;
  }

  RateResult result;
  result.gamma = 0.5 * (lo + hi);
  result.bracket = {lo, hi};
  const double truncation_tol = 0.1 * std::min(tol, 1e-14);
  const auto [value, terms] = generating_function_terms(spec, result.gamma, truncation_tol);
  result.residual = std::abs(value - 1.0) + truncation_tol;
  result.truncation_K = terms;
  return result;
}

Growth growth_classifier(int d, const HazardSpec &spec, std::int64_t horizon) {
  if (d < 1)
    throw DomainError("growth_classifier requires d >= 1");
  if (horizon < 1)
    throw DomainError("growth_classifier requires N >= 1");
  const auto g = pmf_table(spec, horizon, static_cast<double>(d));
  std::vector<double> v(static_cast<std::size_t>(horizon) + 1, 0.0);
  v[0] = 1.0;
  for (std::size_t n = 1; n < v.size(); ++n) {
    v[n] = convolve_step(g, v, n);
    if (v[n] > 1.0)
      return Growth::Supercritical;
  }

  const std::int64_t tail = std::max<std::int64_t>(1, horizon / 4);
  for (std::int64_t n = horizon - tail + 1; n <= horizon; ++n) {
    const double prev = v[static_cast<std::size_t>(n - 1)];
    const double cur = v[static_cast<std::size_t>(n)];
    if (cur == 0.0)
      continue; // underflowed to zero: vanished
    if (!(cur < prev && cur <= kSubcriticalRatio * prev))
      return Growth::Indeterminate;
  }
  return Growth::Subcritical;
}

} // namespace frogcrit
