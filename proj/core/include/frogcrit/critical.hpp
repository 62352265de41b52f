#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace frogcrit {

/// Solved critical parameter of the directed-tree frog model together with
/// the analytic brackets around it.
struct CriticalResult {
  int d = 0;
  double c = 0.0;
  double q_c = 0.0;
  double residual = 0.0;  // |G(q_c) - 1|
  double lower_c2 = 0.0;  // numerical inversion of the two-sided bound on d
  double upper_c2 = 0.0;
  double lower_c3 = 0.0;  // explicit closed forms
  std::optional<double> upper_c3; // defined for d >= 3
};

enum class Model { ConePercolation, OriginalFrog, SelfAvoidingFrog, Removal };

const char *to_string(Model m) noexcept;

struct ModelBounds {
  Model model = Model::ConePercolation;
  int d = 0;
  std::optional<double> lower;
  double upper = 0.0;
};

inline constexpr double kDefaultTol = 1e-12;

/// G(q) = sum_{k>=1} c (d q)^k prod_{i=1}^{k-1} (1 - c q^i), truncation error below tol.
/// Throws DivergenceError when d*q >= 1.
double survival_series(int d, double c, double q, double tol = kDefaultTol);

/// Root of G(q) = 1 on (0, 1/d), plus the four bound values.
CriticalResult solve_qc(int d, double c, double tol = kDefaultTol);

/// Two-sided bound on d implied by a critical value q:
///   lower_d = (c+1)(1 - sqrt(1 - 4 q c^2/(c+1)^2)) / (2 q^2 c^2)
///   upper_d = (c+1)(1 - sqrt(1 - 4 c^2/(c+1)^2 q (q+1))) / (2 c^2 q^2 (q+1))
struct DBounds {
  double lower_d;
  double upper_d;
};
DBounds bounds_on_d(double c, double q);

/// q_lower solves lower_d(c, q) = d and q_upper solves upper_d(c, q) = d.
struct QBounds {
  double q_lower;
  double q_upper;
};
QBounds invert_bounds_c2(int d, double c, double tol = kDefaultTol);

/// Closed-form brackets: lower = 1/(d(c+1) - (c/(c+1))^2) for d >= 2,
/// upper = (F - sqrt(F^2 - 224 c^2 (c+1)^2)) / (16 c^2), F = 7d(c+1)^3 - 8c^2, for d >= 3.
struct ExplicitBounds {
  double lower;
  std::optional<double> upper;
};
ExplicitBounds explicit_bounds_c3(int d, double c);

/// r(p): per-edge forward-hit probability of a geometric-lifetime walk on the tree.
double r_of_p(int d, double p);
/// Inverse of r_of_p: p = (d+1) r / (1 + d r^2).
double p_of_r(int d, double r);

ModelBounds cone_percolation_bounds(int d);
ModelBounds original_frog_upper(int d);
ModelBounds self_avoiding_upper(int d);
ModelBounds removal_bounds(int d);

/// Comparison bounds from the earlier literature.
namespace literature {
double cone_lower(int d);            // 1/(2d)
double cone_upper(int d);            // 1 - sqrt(1 - 1/d)
double original_upper(int d);        // (d+1)/(2d)
double self_avoiding_upper(int d);   // (2d+1 - sqrt(4d^2 - 3))/2
} // namespace literature

struct ConeRow {
  int d;
  double lower_c2, lower_prop, lower_known;
  double upper_c2, upper_prop, upper_known;
};

struct FrogRow {
  int d;
  double original_c2, original_prop, original_known;
  double self_avoiding_c2, self_avoiding_prop, self_avoiding_known;
};

std::vector<ConeRow> table_cone(std::span<const int> d_list);
std::vector<FrogRow> table_frogs(std::span<const int> d_list);

} // namespace frogcrit
