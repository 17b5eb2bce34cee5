#include "rtls/instance.hpp"

#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#include "rtls/kernels.hpp"

namespace rtls {

bool ProblemInstance::b_is_zero() const {
  return btb == 0.0;
}

bool ProblemInstance::atb_is_zero() const {
  // Exactly-zero data (or exact orthogonality in the given floats) is what
  // the degenerate branches are for; anything larger is a generic instance.
  const double scale = A.lpNorm<Eigen::Infinity>() * b.lpNorm<Eigen::Infinity>();
  return Atb.lpNorm<Eigen::Infinity>() <= 1e-15 * scale;
}

ProblemInstance make_problem(Eigen::MatrixXd A, Eigen::VectorXd b,
                             Eigen::MatrixXd L, double rho) {
  if (A.rows() == 0 || A.cols() == 0)
    throw std::invalid_argument("make_problem: empty data matrix");
  if (b.size() != A.rows())
    throw std::invalid_argument("make_problem: b length does not match rows of A");
  if (L.cols() != A.cols())
    throw std::invalid_argument("make_problem: L column count does not match A");
  if (L.rows() > L.cols())
    throw std::invalid_argument("make_problem: regularizer has more rows than columns");
  if (!(rho > 0.0))
    throw std::invalid_argument("make_problem: rho must be positive");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(L);
  qr.setThreshold(static_cast<double>(std::max(L.rows(), L.cols())) *
                  std::numeric_limits<double>::epsilon());
  if (qr.rank() < L.rows())
    throw std::invalid_argument("make_problem: regularizer L is numerically rank deficient");

  ProblemInstance p;
  p.A = std::move(A);
  p.b = std::move(b);
  p.L = std::move(L);
  p.rho = rho;
  p.AtA = kernels::gram(p.A);
  p.Atb = p.A.transpose() * p.b;
  p.LtL = kernels::gram(p.L);
  p.btb = p.b.squaredNorm();
  return p;
}

double fractional_objective(const ProblemInstance& p, const Eigen::VectorXd& x) {
  const double res = (p.A * x - p.b).squaredNorm();
  const double semi = (p.L * x).squaredNorm();
  return res / (x.squaredNorm() + 1.0) + p.rho * semi;
}

} // namespace rtls
