#ifndef RTLS_KERNELS_HPP
#define RTLS_KERNELS_HPP

#include <Eigen/Dense>

// Dense fill/product kernels used by the rest of the library.  Each kernel
// has a serial reference implementation and an OpenMP version; the parallel
// versions compute every output entry with the same per-entry arithmetic as
// the serial ones, so results are bitwise identical and independent of the
// thread count.

namespace rtls::kernels {

/// A^T A as a dense symmetric matrix, entry-by-entry column dot products.
Eigen::MatrixXd gram_serial(const Eigen::MatrixXd& a);
Eigen::MatrixXd gram_parallel(const Eigen::MatrixXd& a);
Eigen::MatrixXd gram(const Eigen::MatrixXd& a);

/// Kernel matrix of the shaw test problem: midpoint quadrature of
/// k(s,t) = ((cos s + cos t) * sin(u)/u)^2, u = pi (sin s + sin t),
/// on [-pi/2, pi/2]^2, scaled by the quadrature weight h = pi/n.
Eigen::MatrixXd shaw_matrix_serial(int n);
Eigen::MatrixXd shaw_matrix_parallel(int n);
Eigen::MatrixXd shaw_matrix(int n);

/// True if OpenMP was compiled in and more than one thread is available.
bool parallel_enabled();

} // namespace rtls::kernels

#endif
