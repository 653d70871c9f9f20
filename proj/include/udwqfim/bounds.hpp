#ifndef UDWQFIM_BOUNDS_HPP
#define UDWQFIM_BOUNDS_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "udwqfim/qfim.hpp"

// Cramer-Rao variance bounds derived from a Fisher matrix, the
// simultaneous/individual efficiency ratio, and the closed-form reference
// values used as cross-check fixtures.

namespace udwqfim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundsReport {
  std::vector<Axis> axes;
  std::vector<double> var_sim;  // diag of F^{-1}; +inf when flagged unbounded
  std::vector<double> var_ind;  // 1 / F_{uu}
  double gamma = kInf;          // (sum var_sim / m) / (sum var_ind)
  bool gamma_defined = false;
  double covariance_cross_term = 0.0;  // -F_{01} / det(F) for two axes
  double det_fisher = 0.0;
  bool singular = false;  // det below threshold: var_sim flagged unbounded
};

// Variance bounds from a symmetric PSD Fisher matrix. A singular matrix
// (det <= 1e-14 * scale) or an unbounded-information flag produces +inf
// entries rather than an exception, so grid sweeps survive boundary
// points. `unbounded` may be empty when no support flags apply.
BoundsReport crb(const Eigen::MatrixXd& fisher, const std::vector<Axis>& axes,
                 const std::vector<bool>& unbounded = {});

// Gamma = (mean of var_sim) / (sum of var_ind); 0.5 exactly when the
// Fisher matrix is diagonal. Returns nullopt when any variance is
// unbounded (the undefined-ratio flag).
std::optional<double> gamma_ratio(const BoundsReport& report);

struct NoiselessBounds {
  double var_T;
  double var_delta0;
};

// Closed-form minimal variances of the noiseless stationary state:
//   Var(T)   = 2 T^4 (1 + 2 cosh(w/T))^2 / (w^2 (3 + delta0) (2 + cosh(w/T)))
//   Var(D0)  = 3 - 2 delta0 - delta0^2
// Valid for delta0 strictly inside (-3, 1).
NoiselessBounds noiseless_closed_forms(const ModelPoint& p);

struct DephasingBounds {
  double var_T_sim;
  double var_delta0_sim;
  double var_T_ind;
  double var_delta0_ind;
  double gamma;
  bool defined = true;  // false when a fixture denominator degenerates
};

// Closed-form variance bounds of the dephased state as a function of the
// decoherence factor kappa. These expressions are transcribed reference
// fixtures; the numeric pipeline is the authority and the two are
// compared, never mixed.
DephasingBounds dephasing_closed_forms(const ModelPoint& p, double kappa_value);

struct FormulaDiscrepancy {
  std::string expression;
  std::string point;
  double fixture_value;
  double pipeline_value;
  double relative_deviation;
};

// Run the full pipeline at (p, kappa) and compare each fixture expression
// against it. Deviations beyond 1e-6 relative are returned as structured
// findings; agreement returns an empty list.
std::vector<FormulaDiscrepancy> compare_dephasing_fixtures(const ModelPoint& p,
                                                           double kappa_value,
                                                           double rel_tol = 1e-6);

}  // namespace udwqfim

#endif
