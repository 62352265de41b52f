#include "frogcrit/distributions.hpp"

#include <cmath>
#include <string>

#include "frogcrit/errors.hpp"

namespace frogcrit {

HazardSpec::HazardSpec(double c, double q) : c_(c), q_(q) {
  if (!(c > 0.0 && c <= 1.0))
    throw DomainError("HazardSpec requires 0 < c <= 1, got c = " + std::to_string(c));
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("HazardSpec requires 0 < q < 1, got q = " + std::to_string(q));
}

double HazardSpec::hazard(std::int64_t k) const {
  if (k < 1)
    throw DomainError("hazard index must be >= 1");
  return c_ * std::pow(q_, static_cast<double>(k));
}

TreeParams::TreeParams(int d, double c, double q) : d_(d), c_(c), q_(q) {
  if (d < 2)
    throw DomainError("TreeParams requires d >= 2, got d = " + std::to_string(d));
  if (!(c > 0.0 && c <= 1.0))
    throw DomainError("TreeParams requires 0 < c <= 1, got c = " + std::to_string(c));
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("TreeParams requires 0 < q < 1, got q = " + std::to_string(q));
  const double dq = static_cast<double>(d) * q;
  if (dq > 1.0)
    throw DomainError("TreeParams requires d*q <= 1, got d*q = " + std::to_string(dq));
  if (!(c * dq < 1.0))
    throw DomainError("TreeParams requires c*d*q < 1, got c*d*q = " + std::to_string(c * dq));
}

double pochhammer(double a, double x, std::int64_t k) {
  if (!(a >= 0.0 && a < 1.0))
    throw DomainError("pochhammer requires a in [0, 1)");
  if (!(x >= 0.0 && x < 1.0))
    throw DomainError("pochhammer requires x in [0, 1)");
  if (k < 0)
    throw DomainError("pochhammer requires k >= 0");

  double term = a; // a * x^i
  if (x > kLogProductThreshold) {
    double log_sum = 0.0;
    for (std::int64_t i = 0; i < k && term > 0.0; ++i) {
      log_sum += std::log1p(-term);
      term *= x;
    }
    return std::exp(log_sum);
  }
  double prod = 1.0;
  for (std::int64_t i = 0; i < k && term > 0.0; ++i) {
    prod *= 1.0 - term;
    term *= x;
  }
  return prod;
}

double interarrival_pmf(const HazardSpec &spec, std::int64_t k) {
  if (k < 1)
    throw DomainError("interarrival_pmf requires k >= 1");
  return spec.hazard(k) * interarrival_survival(spec, k);
}

double interarrival_survival(const HazardSpec &spec, std::int64_t n) {
  if (n < 1)
    throw DomainError("interarrival_survival requires n >= 1");
  return pochhammer(spec.c() * spec.q(), spec.q(), n - 1);
}

std::int64_t defect_truncation_index(const HazardSpec &spec, double tol) {
  if (!(tol > 0.0))
    throw DomainError("defect_mass requires tol > 0");
  const double c = spec.c();
  const double q = spec.q();
  // Tail bound after K factors: c q^{K+1} / ((1 - q)(1 - c q^{K+1})).
  std::int64_t k = 0;
  double qk1 = q;
  while (c * qk1 / ((1.0 - q) * (1.0 - c * qk1)) >= tol) {
    ++k;
    qk1 *= q;
  }
  return k;
}

double defect_mass(const HazardSpec &spec, double tol) {
  return interarrival_survival(spec, defect_truncation_index(spec, tol) + 1);
}

} // namespace frogcrit
