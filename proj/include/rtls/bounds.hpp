#ifndef RTLS_BOUNDS_HPP
#define RTLS_BOUNDS_HPP

#include <optional>

#include <Eigen/Dense>

#include "rtls/instance.hpp"

namespace rtls {

enum class DegenerateCase { generic, atb_zero, b_zero };

/// Attainment check and the closed-form search interval for the parametric
/// problem.  All eigenvalues come from symmetric eigensolvers.
struct BoundReport {
  bool assumption_holds = false;
  double l1 = 0.0;     // lambda_min(F' A'A F); unused when k = n
  double l2 = 0.0;     // lambda_min of the bordered matrix; unused when k = n
  std::optional<Eigen::MatrixXd> F;  // orthonormal basis of null(L), absent when k = n

  double delta = 0.0;   // l2 / (rho lambda_min(L L'))
  double beta = 0.0;    // 2 lambda_max(A'A)
  double gamma = 0.0;   // 2 ||A'b||
  double zeta = 0.0;    // rho lambda_min(L L')
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  double alpha_min = 1.0;
  double alpha_max = 1.0;  // from the tighter upper bound used by the solvers
  DegenerateCase degenerate_case = DegenerateCase::generic;
};

struct AssumptionCheck {
  bool holds = false;
  double l1 = 0.0;
  double l2 = 0.0;
  std::optional<Eigen::MatrixXd> F;
};

/// Either k = n, or the bordered-matrix eigenvalue l2 is strictly below
/// l1 = lambda_min(F' A'A F).  F comes from a QR factorization of L'.
AssumptionCheck check_assumption(const ProblemInstance& p);

struct AlphaLower {
  double alpha_min = 1.0;
  DegenerateCase degenerate_case = DegenerateCase::generic;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// Lower estimate of the optimal parameter.  Three branches:
/// A'b != 0 (quadratic-inequality bound), A'b = 0 with b != 0
/// (epsilon-dependent bound; the final answer must also be compared against
/// g(1) = ||b||^2), and b = 0 (alpha* = 1 exactly).
AlphaLower alpha_lower(const ProblemInstance& p, double epsilon,
                       const AssumptionCheck& ac);

/// Interval upper estimate from the earlier conservative bound.
double alpha_upper_beck(const ProblemInstance& p, const AssumptionCheck& ac);

/// Tighter interval upper estimate at the same computational cost.  For
/// k = n it coincides with the conservative k = n bound.
double alpha_upper_new(const ProblemInstance& p, const AssumptionCheck& ac);

/// Bound on |lambda(alpha)| over [alpha_min, alpha_max]; needs alpha_min > 1.
double lambda_bound_u(const ProblemInstance& p, double alpha_min);

/// Worst-case count of parametric evaluations for the branch-and-bound
/// solver at tolerance epsilon.  Diagnostic only; never truncates a search.
long long iteration_bound(const ProblemInstance& p, double alpha_min,
                          double alpha_max, double epsilon);

/// Full pipeline: assumption check, both interval endpoints, coefficients.
BoundReport compute_bounds(const ProblemInstance& p, double epsilon);

} // namespace rtls

#endif
