#pragma once

#include <cstdint>

namespace frogcrit {

/// Geometric hazard h_k = c * q^k of a defective inter-arrival law on {1, 2, ..., inf}.
///
/// Construction validates 0 < c <= 1 and 0 < q < 1 and throws DomainError otherwise.
class HazardSpec {
public:
  HazardSpec(double c, double q);

  double c() const noexcept { return c_; }
  double q() const noexcept { return q_; }

  /// h_k = c * q^k, the conditional probability that a gap equals k given it is >= k.
  double hazard(std::int64_t k) const;

  friend bool operator==(const HazardSpec &, const HazardSpec &) = default;

private:
  double c_;
  double q_;
};

/// Frog model parameters on the directed tree with d children per non-root vertex.
///
/// The lifetime law is P(T >= n) = c * (d q)^n, so d * q <= 1 and c * d * q < 1 are required.
class TreeParams {
public:
  TreeParams(int d, double c, double q);

  int d() const noexcept { return d_; }
  double c() const noexcept { return c_; }
  double q() const noexcept { return q_; }

  /// Hazard of the one-branch firework induced by these parameters: (c, q).
  HazardSpec branch_hazard() const { return HazardSpec{c_, q_}; }

  friend bool operator==(const TreeParams &, const TreeParams &) = default;

private:
  int d_;
  double c_;
  double q_;
};

// Above this ratio products of (1 - a x^i) are accumulated as sums of log1p terms.
inline constexpr double kLogProductThreshold = 0.9;

/// q-Pochhammer symbol (a; x)_k = prod_{i=0}^{k-1} (1 - a x^i). Empty product is 1.
/// Requires a, x in [0, 1).
double pochhammer(double a, double x, std::int64_t k);

/// f_k = c q^k prod_{i=1}^{k-1} (1 - c q^i), for k >= 1.
double interarrival_pmf(const HazardSpec &spec, std::int64_t k);

/// P(T >= n) = prod_{i=1}^{n-1} (1 - c q^i), for n >= 1.
double interarrival_survival(const HazardSpec &spec, std::int64_t n);

/// Number of factors needed so the omitted tail of prod_{i>=1}(1 - c q^i) has
/// |log| below tol. Exposed for tests and diagnostics.
std::int64_t defect_truncation_index(const HazardSpec &spec, double tol);

/// f_inf = P(T = inf) = prod_{i>=1} (1 - c q^i), truncated with log-error below tol.
double defect_mass(const HazardSpec &spec, double tol);

} // namespace frogcrit
