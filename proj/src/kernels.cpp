#include "rtls/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtls::kernels {

bool parallel_enabled() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1;
#else
  return false;
#endif
}

Eigen::MatrixXd gram_serial(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = a.col(i).dot(a.col(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Eigen::MatrixXd gram_parallel(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd g(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = a.col(i).dot(a.col(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& a) {
  return parallel_enabled() ? gram_parallel(a) : gram_serial(a);
}

namespace {

inline double shaw_entry(double ci, double cj, double pi_, double pj, double h) {
  const double u = pi_ + pj;
  const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
  const double base = (ci + cj) * sinc;
  return h * base * base;
}

} // namespace

Eigen::MatrixXd shaw_matrix_serial(int n) {
  const double h = M_PI / n;
  Eigen::VectorXd co(n), ps(n);
  for (int i = 0; i < n; ++i) {
    const double s = -M_PI / 2 + (i + 0.5) * h;
    co(i) = std::cos(s);
    ps(i) = M_PI * std::sin(s);
  }
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = shaw_entry(co(i), co(j), ps(i), ps(j), h);
  return a;
}

Eigen::MatrixXd shaw_matrix_parallel(int n) {
  const double h = M_PI / n;
  Eigen::VectorXd co(n), ps(n);
  for (int i = 0; i < n; ++i) {
    const double s = -M_PI / 2 + (i + 0.5) * h;
    co(i) = std::cos(s);
    ps(i) = M_PI * std::sin(s);
  }
  Eigen::MatrixXd a(n, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = shaw_entry(co(i), co(j), ps(i), ps(j), h);
  return a;
}

Eigen::MatrixXd shaw_matrix(int n) {
  return parallel_enabled() ? shaw_matrix_parallel(n) : shaw_matrix_serial(n);
}

} // namespace rtls::kernels
