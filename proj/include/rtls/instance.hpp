#ifndef RTLS_INSTANCE_HPP
#define RTLS_INSTANCE_HPP

#include <Eigen/Dense>

namespace rtls {

/// Data of the regularized total least squares problem
///   min_x ||Ax - b||^2 / (||x||^2 + 1) + rho ||Lx||^2
/// together with cached Gram products.  Immutable after construction.
struct ProblemInstance {
  Eigen::MatrixXd A;    // m x n data matrix
  Eigen::VectorXd b;    // m observation
  Eigen::MatrixXd L;    // k x n regularizer, k <= n, full row rank
  double rho = 0.0;     // penalty, > 0

  // cached products
  Eigen::MatrixXd AtA;  // n x n symmetric
  Eigen::VectorXd Atb;  // n
  Eigen::MatrixXd LtL;  // n x n symmetric PSD
  double btb = 0.0;

  Eigen::Index m() const { return A.rows(); }
  Eigen::Index n() const { return A.cols(); }
  Eigen::Index k() const { return L.rows(); }

  bool b_is_zero() const;
  bool atb_is_zero() const;
};

/// Validates shapes, rho > 0 and the numerical row rank of L, then builds
/// the cached Gram products.  Throws std::invalid_argument on bad input.
ProblemInstance make_problem(Eigen::MatrixXd A, Eigen::VectorXd b,
                             Eigen::MatrixXd L, double rho);

/// Objective of the fractional problem at x (with the true ||x||^2 + 1
/// denominator, independent of any sphere parametrization).
double fractional_objective(const ProblemInstance& p, const Eigen::VectorXd& x);

} // namespace rtls

#endif
