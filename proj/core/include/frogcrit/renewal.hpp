#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "frogcrit/distributions.hpp"

namespace frogcrit {

/// Renewal probabilities u_n = P(Y_n = 1), n = 0..horizon, of the undelayed renewal
/// sequence with inter-arrival law given by a HazardSpec. Immutable once built.
class RenewalProbs {
public:
  RenewalProbs(HazardSpec spec, std::vector<double> values);

  const HazardSpec &spec() const noexcept { return spec_; }
  std::int64_t horizon() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t n) const { return values_.at(n); }

private:
  HazardSpec spec_;
  std::vector<double> values_;
};

struct RateResult {
  double gamma = 0.0;
  double residual = 0.0; // |F(gamma) - 1|
  std::pair<double, double> bracket{0.0, 0.0};
  std::int64_t truncation_K = 0;
};

enum class Growth { Subcritical, Supercritical, Indeterminate };

const char *to_string(Growth g) noexcept;

/// u_0..u_N via u_n = sum_{k=1}^{n} f_k u_{n-k}.
RenewalProbs renewal_probabilities(const HazardSpec &spec, std::int64_t horizon);

/// v_n = scale^n u_n for n = 0..N, computed with the scaled recursion
/// v_n = sum_k (scale^k f_k) v_{n-k} so that nothing underflows when scale ~ 1/rate.
std::vector<double> scaled_renewal(const HazardSpec &spec, double scale, std::int64_t horizon);

/// F(alpha) = sum_{n>=1} alpha^n f_n, truncated once the geometric tail
/// c (alpha q)^{K+1} / (1 - alpha q) drops below tol. Throws DivergenceError if alpha*q >= 1.
double generating_function(const HazardSpec &spec, double alpha, double tol);

/// Same as generating_function, also reporting the number of terms summed.
std::pair<double, std::int64_t> generating_function_terms(const HazardSpec &spec, double alpha,
                                                          double tol);

/// Renewal convergence rate gamma in (1, 1/q): the root of F(gamma) = 1, by bisection.
RateResult convergence_rate(const HazardSpec &spec, double tol = 1e-12);

// Trailing ratio bound used to call a finite sequence Subcritical.
inline constexpr double kSubcriticalRatio = 1.0 - 1e-6;

/// Classifies d^n u_n over n <= horizon: Supercritical if some term exceeds 1,
/// Subcritical if the trailing quarter is strictly decreasing below 1 with every
/// ratio <= kSubcriticalRatio, Indeterminate otherwise.
Growth growth_classifier(int d, const HazardSpec &spec, std::int64_t horizon);

} // namespace frogcrit
