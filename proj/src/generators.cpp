#include "rtls/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "rtls/kernels.hpp"
#include "rtls/solvers.hpp"

namespace rtls {

TestSystem shaw(int n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("shaw: n must be even and at least 4");
  TestSystem sys;
  sys.a_true = kernels::shaw_matrix(n);
  const double h = M_PI / n;
  sys.x_true.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = -M_PI / 2 + (i + 0.5) * h;
    sys.x_true(i) = 2.0 * std::exp(-6.0 * (t - 0.8) * (t - 0.8)) +
                    std::exp(-2.0 * (t + 0.5) * (t + 0.5));
  }
  sys.b_true = sys.a_true * sys.x_true;
  return sys;
}

Eigen::MatrixXd blur_matrix(int n, int band, double blur_sigma) {
  const int side = static_cast<int>(std::lround(std::sqrt(double(n))));
  if (side * side != n)
    throw std::invalid_argument("blur_matrix: n must be a perfect square");
  if (band < 1) throw std::invalid_argument("blur_matrix: band must be >= 1");
  if (!(blur_sigma > 0.0))
    throw std::invalid_argument("blur_matrix: blur_sigma must be positive");

  Eigen::VectorXd t = Eigen::VectorXd::Zero(side);
  const double c = 1.0 / (blur_sigma * std::sqrt(2.0 * M_PI));
  for (int d = 0; d < std::min(band, side); ++d)
    t(d) = c * std::exp(-d * d / (2.0 * blur_sigma * blur_sigma));

  Eigen::MatrixXd T(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) T(i, j) = std::abs(i - j) < band ? t(std::abs(i - j)) : 0.0;

  Eigen::MatrixXd A(n, n);
  for (int bi = 0; bi < side; ++bi)
    for (int bj = 0; bj < side; ++bj)
      A.block(bi * side, bj * side, side, side) = T(bi, bj) * T;
  return A;
}

Eigen::MatrixXd first_difference_l(int n) {
  if (n < 2) throw std::invalid_argument("first_difference_l: n must be >= 2");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n - 1, n);
  for (int i = 0; i < n - 1; ++i) {
    L(i, i) = 1.0;
    L(i, i + 1) = -1.0;
  }
  return L;
}

Eigen::MatrixXd laplacian_2d_l(int side) {
  if (side < 3) throw std::invalid_argument("laplacian_2d_l: side must be >= 3");
  const int n = side * side;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const auto idx = [side](int i, int j) { return i * side + j; };
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const int r = idx(i, j);
      L(r, r) = -4.0;
      if (i > 0) L(r, idx(i - 1, j)) = 1.0;
      if (i + 1 < side) L(r, idx(i + 1, j)) = 1.0;
      if (j > 0) L(r, idx(i, j - 1)) = 1.0;
      if (j + 1 < side) L(r, idx(i, j + 1)) = 1.0;
    }
  }
  return L;
}

Eigen::VectorXd cosine_image(int side, const std::vector<CosineTerm>& coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("cosine_image: coefficient list is empty");
  Eigen::VectorXd x(side * side);
  // Column-major stacking: pixel (z1, z2) with z1, z2 in 1..side lands at
  // (z2-1)*side + (z1-1).
  for (int z2 = 1; z2 <= side; ++z2) {
    for (int z1 = 1; z1 <= side; ++z1) {
      double v = 0.0;
      for (const CosineTerm& c : coeffs)
        v += c.amplitude * std::cos(c.w1 * z1 + c.w2 * z2 + c.phase);
      x((z2 - 1) * side + (z1 - 1)) = v;
    }
  }
  const double norm = x.norm();
  if (norm == 0.0)
    throw std::invalid_argument("cosine_image: image is identically zero");
  return x / norm;
}

const std::vector<CosineTerm>& default_cosine_coeffs() {
  static const std::vector<CosineTerm> coeffs = {
      {1.0, 0.4, 0.3, 0.5}, {0.7, 1.1, -0.7, 1.0}, {0.4, 2.0, 1.5, -0.3}};
  return coeffs;
}

double NormalSampler::uniform01() {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

ProblemInstance add_noise(const Eigen::MatrixXd& a_true,
                          const Eigen::VectorXd& b_true,
                          const Eigen::MatrixXd& L, double rho, double sigma,
                          std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  Eigen::MatrixXd A = a_true;
  Eigen::VectorXd b = b_true;
  if (sigma > 0.0) {
    NormalSampler rng(seed);
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) += sigma * rng.next();
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) += sigma * rng.next();
  }
  return make_problem(std::move(A), std::move(b), L, rho);
}

LCurveResult lcurve_rho(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::MatrixXd& L,
                        const std::vector<double>& rho_grid, double epsilon) {
  if (rho_grid.empty())
    throw std::invalid_argument("lcurve_rho: empty penalty grid");
  for (std::size_t i = 0; i + 1 < rho_grid.size(); ++i)
    if (!(rho_grid[i] < rho_grid[i + 1]))
      throw std::invalid_argument("lcurve_rho: grid must be strictly ascending");

  LCurveResult out;
  SolverConfig cfg;
  cfg.epsilon = epsilon;
  for (double rho : rho_grid) {
    ProblemInstance p = make_problem(A, b, L, rho);
    SolveReport rep = btd_solve(p, cfg);
    const double denom = rep.x_star.squaredNorm() + 1.0;
    LCurvePoint pt;
    pt.rho = rho;
    pt.residual = (A * rep.x_star - b).squaredNorm() / denom;
    pt.seminorm = (L * rep.x_star).squaredNorm();
    out.curve.push_back(pt);
  }

  if (rho_grid.size() < 3) {
    out.degenerate = true;
    out.rho = rho_grid[rho_grid.size() / 2];
    return out;
  }

  // Menger curvature of the log-log curve; the corner is the interior point
  // of largest curvature.
  const double tiny = 1e-300;
  std::vector<double> lx(out.curve.size()), ly(out.curve.size());
  for (std::size_t i = 0; i < out.curve.size(); ++i) {
    lx[i] = std::log(std::max(out.curve[i].residual, tiny));
    ly[i] = std::log(std::max(out.curve[i].seminorm, tiny));
  }
  double best_curv = -1.0;
  std::size_t best_i = out.curve.size() / 2;
  for (std::size_t i = 1; i + 1 < out.curve.size(); ++i) {
    const double ax = lx[i] - lx[i - 1], ay = ly[i] - ly[i - 1];
    const double bx = lx[i + 1] - lx[i], by = ly[i + 1] - ly[i];
    const double cx = lx[i + 1] - lx[i - 1], cy = ly[i + 1] - ly[i - 1];
    const double area2 = std::abs(ax * by - ay * bx);
    const double den = std::sqrt((ax * ax + ay * ay) * (bx * bx + by * by) *
                                 (cx * cx + cy * cy));
    const double curv = den > 0.0 ? 2.0 * area2 / den : 0.0;
    if (curv > best_curv) {
      best_curv = curv;
      best_i = i;
    }
  }
  out.rho = out.curve[best_i].rho;
  return out;
}

} // namespace rtls
