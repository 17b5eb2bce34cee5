#ifndef RTLS_TEST_UTIL_HPP
#define RTLS_TEST_UTIL_HPP

#include <Eigen/Eigenvalues>

#include "rtls/bounds.hpp"
#include "rtls/generators.hpp"
#include "rtls/instance.hpp"

namespace rtls_test {

/// 2x2 instance whose parametric function has a local non-global minimum.
inline rtls::ProblemInstance demo2x2() {
  Eigen::MatrixXd a(2, 2);
  a << 0.4, 0.8, 0.2, 1.0;
  Eigen::VectorXd b(2);
  b << 0.1, 0.5;
  Eigen::MatrixXd l(1, 2);
  l << 0.1, 0.8;
  return rtls::make_problem(a, b, l, 0.5);
}

inline Eigen::MatrixXd random_matrix(rtls::NormalSampler& rng, Eigen::Index rows,
                                     Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next();
  return m;
}

inline Eigen::VectorXd random_vector(rtls::NormalSampler& rng, Eigen::Index size) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = rng.next();
  return v;
}

/// Random instance; resamples until the attainment assumption holds.
inline rtls::ProblemInstance random_instance(std::uint64_t seed, int m, int n,
                                             int k, double rho) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    rtls::NormalSampler rng(seed * 1000003 + attempt);
    Eigen::MatrixXd a = random_matrix(rng, m, n);
    Eigen::VectorXd b = random_vector(rng, m);
    Eigen::MatrixXd l = random_matrix(rng, k, n);
    rtls::ProblemInstance p = rtls::make_problem(a, b, l, rho);
    if (rtls::check_assumption(p).holds) return p;
  }
}

inline double lambda_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

} // namespace rtls_test

#endif
