#ifndef RTLS_GENERATORS_HPP
#define RTLS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "rtls/instance.hpp"

namespace rtls {

/// Noise-free linear system A_true x_true = b_true of a test problem.
struct TestSystem {
  Eigen::MatrixXd a_true;
  Eigen::VectorXd x_true;
  Eigen::VectorXd b_true;
};

/// A noisy instance together with the truth it was generated from.
struct GeneratedProblem {
  ProblemInstance instance;
  Eigen::VectorXd x_true;
  Eigen::VectorXd b_true;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// One-dimensional image restoration test problem (midpoint quadrature of
/// the slit kernel) with the standard two-Gaussian-humps profile.  n even.
TestSystem shaw(int n);

/// Atmospheric-turbulence blur: kron(T, T) with T the banded symmetric
/// Toeplitz matrix t_d = exp(-d^2 / (2 s^2)) / (s sqrt(2 pi)), d < band.
/// n must be a perfect square.
Eigen::MatrixXd blur_matrix(int n, int band, double blur_sigma = 0.7);

/// Forward-difference operator, (n-1) x n, rows [1, -1]; null space = span(1).
Eigen::MatrixXd first_difference_l(int n);

/// Five-point-stencil discrete Laplacian on a side x side grid with
/// truncation at the boundary; square and nonsingular (k = n).
Eigen::MatrixXd laplacian_2d_l(int side);

struct CosineTerm {
  double amplitude;
  double w1;
  double w2;
  double phase;
};

/// Sum-of-cosines image on a side x side grid, stacked column-major and
/// normalized to unit Euclidean norm.
Eigen::VectorXd cosine_image(int side, const std::vector<CosineTerm>& coeffs);

/// Default three-term coefficient set used by the generators and the CLI.
const std::vector<CosineTerm>& default_cosine_coeffs();

/// Portable normal sampler: mt19937_64 driven 53-bit uniforms through a
/// Box-Muller transform.  Same seed, same stream, on every platform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}
  double next();

 private:
  double uniform01();
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// A = A_true + sigma E, b = b_true + sigma e with E then e drawn row-major
/// from NormalSampler(seed).
ProblemInstance add_noise(const Eigen::MatrixXd& a_true,
                          const Eigen::VectorXd& b_true,
                          const Eigen::MatrixXd& L, double rho, double sigma,
                          std::uint64_t seed);

struct LCurvePoint {
  double rho;
  double residual;   // ||Ax-b||^2 / (||x||^2 + 1) at the global solution
  double seminorm;   // ||Lx||^2
};

struct LCurveResult {
  double rho = 0.0;
  std::vector<LCurvePoint> curve;
  bool degenerate = false;  // grid too short for a curvature estimate
};

/// Sweeps the penalty grid, solving each instance globally, and returns the
/// grid point of maximal discrete curvature of the log-log curve.
LCurveResult lcurve_rho(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::MatrixXd& L,
                        const std::vector<double>& rho_grid,
                        double epsilon = 1e-6);

} // namespace rtls

#endif
