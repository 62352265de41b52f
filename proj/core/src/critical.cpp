#include "frogcrit/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "frogcrit/errors.hpp"
#include "running_product.hpp"

namespace frogcrit {

namespace {

void require_d(int d, int min_d, const char *what) {
  if (d < min_d)
    throw DomainError(std::string(what) + " requires d >= " + std::to_string(min_d) +
                      ", got d = " + std::to_string(d));
}

void require_c(double c, const char *what) {
  if (!(c > 0.0 && c <= 1.0))
    throw DomainError(std::string(what) + " requires 0 < c <= 1, got c = " + std::to_string(c));
}

// 1 - sqrt(1 - x) without cancellation for small x.
double one_minus_sqrt_one_minus(double x) { return x / (1.0 + std::sqrt(1.0 - x)); }

// Root of a decreasing function on (lo, hi) with f(lo) > 0 > f(hi).
double bisect_decreasing(const std::function<double(double)> &f, double lo, double hi,
                         double width, const char *what) {
  if (!(f(lo) > 0.0 && f(hi) < 0.0))
    throw BracketError(std::string(what) + ": no sign change on the search interval");
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double c3_upper(int d, double c) {
  const double cp1 = c + 1.0;
  const double big_f = 7.0 * d * cp1 * cp1 * cp1 - 8.0 * c * c;
  const double x = 224.0 * c * c * cp1 * cp1;
  const double disc = big_f * big_f - x;
  if (disc < 0.0)
    throw DomainError("explicit upper bound: negative discriminant");
  // F - sqrt(F^2 - X) == X / (F + sqrt(F^2 - X))
  return x / (big_f + std::sqrt(disc)) / (16.0 * c * c);
}

} // namespace

const char *to_string(Model m) noexcept {
  switch (m) {
  case Model::ConePercolation:
    return "cone";
  case Model::OriginalFrog:
    return "original";
  case Model::SelfAvoidingFrog:
    return "selfavoiding";
  case Model::Removal:
    return "removal";
  }
  return "unknown";
}

double survival_series(int d, double c, double q, double tol) {
  require_d(d, 1, "survival_series");
  require_c(c, "survival_series");
  if (!(q > 0.0))
    throw DomainError("survival_series requires q > 0");
  if (!(tol > 0.0))
    throw DomainError("survival_series requires tol > 0");
  const double dq = d * q;
  if (dq >= 1.0)
    throw DivergenceError("survival_series diverges: d*q = " + std::to_string(dq) + " >= 1");

  detail::RunningSurvival survival(c, q);
  double geometric = 1.0;
  double sum = 0.0;
  do {
    geometric *= dq;
    sum += c * geometric * survival.value();
    survival.advance();
  } while (c * geometric * dq / (1.0 - dq) >= tol);
  return sum;
}

CriticalResult solve_qc(int d, double c, double tol) {
  require_d(d, 2, "solve_qc");
  require_c(c, "solve_qc");
  if (!(tol > 0.0))
    throw DomainError("solve_qc requires tol > 0");

  const double series_tol = 0.1 * std::min(tol, 1e-14);
  const double q_max = 1.0 / d;
  auto excess = [&](double q) { return survival_series(d, c, q, series_tol) - 1.0; };

  // Uniform scan: locate the sign change and reject more than one.
  constexpr int kScan = 64;
  double lo = 0.0;
  double hi = 0.0;
  double prev_q = 0.0;
  double prev_val = -1.0; // G(0+) = 0
  int sign_changes = 0;
  for (int j = 1; j <= kScan; ++j) {
    const double q = q_max * j / (kScan + 1);
    const double val = excess(q);
    if ((val > 0.0) != (prev_val > 0.0)) {
      ++sign_changes;
      if (sign_changes == 1) {
        lo = prev_q;
        hi = q;
      }
    }
    prev_q = q;
    prev_val = val;
  }
  if (sign_changes > 1)
    throw BracketError("solve_qc: G(q) - 1 changes sign " + std::to_string(sign_changes) +
                       " times on (0, 1/d)");
  if (sign_changes == 0) {
    // Root sits between the last grid point and 1/d.
    lo = prev_q;
    for (int j = 1; j <= 60 && hi == 0.0; ++j) {
      const double q = q_max - (q_max - prev_q) * std::ldexp(1.0, -j);
      if (q >= q_max)
        break;
      if (excess(q) > 0.0)
        hi = q;
      else
        lo = q;
    }
    if (hi == 0.0)
      throw BracketError("solve_qc: G(q) stays below 1 on (0, 1/d)");
  }

  // Bisect to machine precision on q; G is increasing across the bracket.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  const double qc = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;

  CriticalResult result;
  result.d = d;
  result.c = c;
  result.q_c = qc;
  result.residual = std::abs(excess(qc));
  const auto c2 = invert_bounds_c2(d, c, tol);
  result.lower_c2 = c2.q_lower;
  result.upper_c2 = c2.q_upper;
  const auto c3 = explicit_bounds_c3(d, c);
  result.lower_c3 = c3.lower;
  result.upper_c3 = c3.upper;
  return result;
}

namespace {

double d_bound_factor(double c) { return 4.0 * c * c / ((c + 1.0) * (c + 1.0)); }

void require_discriminant(double x, double c, double q) {
  if (x > 1.0)
    throw DomainError("bounds_on_d: negative discriminant at c = " + std::to_string(c) +
                      ", q = " + std::to_string(q));
}

double lower_d_at(double c, double q) {
  const double x = d_bound_factor(c) * q;
  require_discriminant(x, c, q);
  return (c + 1.0) * one_minus_sqrt_one_minus(x) / (2.0 * q * q * c * c);
}

double upper_d_at(double c, double q) {
  const double x = d_bound_factor(c) * q * (q + 1.0);
  require_discriminant(x, c, q);
  return (c + 1.0) * one_minus_sqrt_one_minus(x) / (2.0 * c * c * q * q * (q + 1.0));
}

} // namespace

DBounds bounds_on_d(double c, double q) {
  require_c(c, "bounds_on_d");
  if (!(q > 0.0 && q < 1.0))
    throw DomainError("bounds_on_d requires 0 < q < 1");
  return {lower_d_at(c, q), upper_d_at(c, q)};
}

QBounds invert_bounds_c2(int d, double c, double tol) {
  require_d(d, 2, "invert_bounds_c2");
  require_c(c, "invert_bounds_c2");
  if (!(tol > 0.0))
    throw DomainError("invert_bounds_c2 requires tol > 0");

  // Largest q keeping each discriminant nonnegative, kept strictly below 1
  // and pulled in by a few ulps so rounding cannot push x past 1.
  const double a = (c + 1.0) * (c + 1.0) / (4.0 * c * c);
  const double shrink = 1.0 - 1e-15;
  const double lower_dom = std::min(1.0, a) * shrink;
  const double upper_dom = std::min(1.0, 0.5 * (std::sqrt(1.0 + 4.0 * a) - 1.0)) * shrink;
  const double q_min = 1e-9 / d;

  QBounds out;
  out.q_lower = bisect_decreasing([&](double q) { return lower_d_at(c, q) - d; }, q_min,
                                  lower_dom, tol, "invert_bounds_c2 (lower)");
  out.q_upper = bisect_decreasing([&](double q) { return upper_d_at(c, q) - d; }, q_min,
                                  upper_dom, tol, "invert_bounds_c2 (upper)");
  return out;
}

ExplicitBounds explicit_bounds_c3(int d, double c) {
  require_d(d, 2, "explicit_bounds_c3");
  require_c(c, "explicit_bounds_c3");
  const double ratio = c / (c + 1.0);
  ExplicitBounds b;
  b.lower = 1.0 / (d * (c + 1.0) - ratio * ratio);
  if (d >= 3)
    b.upper = c3_upper(d, c);
  return b;
}

double r_of_p(int d, double p) {
  require_d(d, 1, "r_of_p");
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("r_of_p requires 0 < p < 1");
  const double dp1 = d + 1.0;
  // Rationalized minus root of d p r^2 - (d+1) r + p = 0.
  return 2.0 * p / (dp1 + std::sqrt(dp1 * dp1 - 4.0 * d * p * p));
}

double p_of_r(int d, double r) {
  require_d(d, 1, "p_of_r");
  if (!(r > 0.0 && r < 1.0))
    throw DomainError("p_of_r requires 0 < r < 1");
  const double p = (d + 1.0) * r / (1.0 + d * r * r);
  if (p >= 1.0)
    throw RangeError("p_of_r: r = " + std::to_string(r) + " maps to p >= 1");
  return p;
}

ModelBounds cone_percolation_bounds(int d) {
  require_d(d, 2, "cone_percolation_bounds");
  ModelBounds b;
  b.model = Model::ConePercolation;
  b.d = d;
  if (d == 2) {
    b.lower = explicit_bounds_c3(2, 1.0).lower;
    b.upper = invert_bounds_c2(2, 1.0).q_upper;
    return b;
  }
  const double m = 7.0 * d - 1.0;
  b.lower = 1.0 / (2.0 * d - 0.25);
  b.upper = m * one_minus_sqrt_one_minus(14.0 / (m * m)) / 2.0;
  return b;
}

ModelBounds original_frog_upper(int d) {
  require_d(d, 2, "original_frog_upper");
  ModelBounds b;
  b.model = Model::OriginalFrog;
  b.d = d;
  if (d == 2) {
    b.upper = p_of_r(2, invert_bounds_c2(2, 1.0).q_upper);
    return b;
  }
  // (d+1)[m - s] / (d m^2 - 7d + 2 - d m s) with m = 7d-1, s = sqrt(m^2 - 14),
  // rewritten through t = m - s = 14/(m + s) to avoid cancellation:
  // denominator = d m t - 7d + 2 = 7 d t/(m + s) + 2.
  const double m = 7.0 * d - 1.0;
  const double s = std::sqrt(m * m - 14.0);
  const double t = 14.0 / (m + s);
  b.upper = (d + 1.0) * t / (7.0 * d * t / (m + s) + 2.0);
  return b;
}

ModelBounds self_avoiding_upper(int d) {
  require_d(d, 2, "self_avoiding_upper");
  const double c = static_cast<double>(d) / (d + 1.0);
  ModelBounds b;
  b.model = Model::SelfAvoidingFrog;
  b.d = d;
  b.upper = d == 2 ? 2.0 * invert_bounds_c2(2, c).q_upper : d * *explicit_bounds_c3(d, c).upper;
  return b;
}

ModelBounds removal_bounds(int d) {
  const auto cone = cone_percolation_bounds(d);
  ModelBounds b;
  b.model = Model::Removal;
  b.d = d;
  b.lower = (d + 1.0) * *cone.lower;
  b.upper = (d + 1.0) * cone.upper;
  if (b.upper >= 1.0)
    throw RangeError("removal_bounds: upper bound reaches 1 at d = " + std::to_string(d));
  return b;
}

namespace literature {
double cone_lower(int d) { return 1.0 / (2.0 * d); }
double cone_upper(int d) { return one_minus_sqrt_one_minus(1.0 / d); }
double original_upper(int d) { return (d + 1.0) / (2.0 * d); }
double self_avoiding_upper(int d) {
  return (2.0 * d + 1.0 - std::sqrt(4.0 * d * d - 3.0)) / 2.0;
}
} // namespace literature

std::vector<ConeRow> table_cone(std::span<const int> d_list) {
  std::vector<ConeRow> rows;
  rows.reserve(d_list.size());
  for (const int d : d_list) {
    const auto c2 = invert_bounds_c2(d, 1.0);
    const auto prop = cone_percolation_bounds(d);
    rows.push_back({d, c2.q_lower, *prop.lower, literature::cone_lower(d), c2.q_upper, prop.upper,
                    literature::cone_upper(d)});
  }
  return rows;
}

std::vector<FrogRow> table_frogs(std::span<const int> d_list) {
  std::vector<FrogRow> rows;
  rows.reserve(d_list.size());
  for (const int d : d_list) {
    const double sa_c = static_cast<double>(d) / (d + 1.0);
    rows.push_back({d, p_of_r(d, invert_bounds_c2(d, 1.0).q_upper), original_frog_upper(d).upper,
                    literature::original_upper(d), d * invert_bounds_c2(d, sa_c).q_upper,
                    self_avoiding_upper(d).upper, literature::self_avoiding_upper(d)});
  }
  return rows;
}

} // namespace frogcrit
