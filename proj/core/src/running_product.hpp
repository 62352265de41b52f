#pragma once

#include <cmath>

#include "frogcrit/distributions.hpp"

namespace frogcrit::detail {

// P_k = prod_{i=1}^{k} (1 - c q^i), advanced one factor at a time.
// Switches to a log1p accumulator when q is close to 1.
class RunningSurvival {
public:
  RunningSurvival(double c, double q)
      : c_(c), q_(q), qi_(q), use_log_(q > kLogProductThreshold) {}

  double value() const { return use_log_ ? std::exp(log_value_) : value_; }

  // c q^{k+1}: the hazard of the next factor.
  double next_hazard() const { return c_ * qi_; }

  void advance() {
    const double h = c_ * qi_;
    if (use_log_)
      log_value_ += std::log1p(-h);
    else
      value_ *= 1.0 - h;
    qi_ *= q_;
  }

private:
  double c_;
  double q_;
  double qi_; // q^{k+1}
  bool use_log_;
  double value_ = 1.0;
  double log_value_ = 0.0;
};

} // namespace frogcrit::detail
