#ifndef RTLS_TRS_HPP
#define RTLS_TRS_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rtls/instance.hpp"

namespace rtls {

/// One equality-constrained trust region subproblem
///   min x'Qx - 2f'x  s.t.  ||x||^2 = radius_sq,
/// with Q = (1/alpha) A'A + rho L'L and f = (1/alpha) A'b.
struct TrsProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd f;
  double radius_sq = 0.0;  // alpha - 1
  double alpha = 1.0;
};

/// Result of one parametric function evaluation g(alpha).
struct GEvaluation {
  double alpha = 1.0;
  Eigen::VectorXd x;           // minimizer x(alpha)
  double lambda = 0.0;         // multiplier, lambda <= lambda_min(Q_alpha)
  double g_value = 0.0;        // g(alpha)
  std::optional<double> g_deriv;
  bool hard_case = false;
};

struct TrsSolution {
  Eigen::VectorXd x;
  double lambda = 0.0;
  bool hard_case = false;
};

struct TrsOptions {
  double kkt_tol = 1e-10;        // stationarity residual tolerance
  double feas_tol_rel = 1e-8;    // | ||x||^2 - (alpha-1) | <= feas_tol_rel * alpha
  double hard_case_tol = 1e-12;  // |d_i| <= hard_case_tol * ||f|| on the bottom eigenspace
  int max_secular_iterations = 200;
};

/// Assemble Q_alpha, f_alpha from the cached Gram products.  alpha >= 1.
TrsProblem build_trs(const ProblemInstance& p, double alpha);

/// Full spectral decomposition of Q, then a safeguarded Newton/bisection
/// iteration on the secular equation for the multiplier.  The hard case is
/// resolved by adding a bottom-eigenvector component (smallest index,
/// positive first nonzero entry) scaled to meet the norm constraint.
TrsSolution solve_trs(const TrsProblem& trs, const TrsOptions& opt = {});

/// Evaluate g(alpha) for the given instance.  alpha = 1 returns x = 0 with
/// g = ||b||^2 and lambda = lambda_min(Q_1).
GEvaluation eval_g(const ProblemInstance& p, double alpha, const TrsOptions& opt = {});

/// g'(alpha) = lambda(alpha) - ||A x(alpha) - b||^2 / alpha^2, for alpha > 1.
double grad_g(const GEvaluation& ev, const ProblemInstance& p);

/// Same as eval_g but also fills g_deriv.
GEvaluation eval_g_with_deriv(const ProblemInstance& p, double alpha,
                              const TrsOptions& opt = {});

/// Batch evaluation over a grid of alpha values; the parallel version runs
/// the independent solves under OpenMP and returns the same values as the
/// serial one, in grid order.
std::vector<GEvaluation> eval_g_many_serial(const ProblemInstance& p,
                                            const std::vector<double>& alphas,
                                            const TrsOptions& opt = {});
std::vector<GEvaluation> eval_g_many_parallel(const ProblemInstance& p,
                                              const std::vector<double>& alphas,
                                              const TrsOptions& opt = {});
std::vector<GEvaluation> eval_g_many(const ProblemInstance& p,
                                     const std::vector<double>& alphas,
                                     const TrsOptions& opt = {});

} // namespace rtls

#endif
