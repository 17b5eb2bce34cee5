#include "rtls/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace rtls {

namespace {

double sym_eig_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("bounds: eigendecomposition failed");
  return eig.eigenvalues()(0);
}

double sym_eig_max(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("bounds: eigendecomposition failed");
  return eig.eigenvalues()(m.rows() - 1);
}

} // namespace

AssumptionCheck check_assumption(const ProblemInstance& p) {
  AssumptionCheck ac;
  const Eigen::Index n = p.n();
  const Eigen::Index k = p.k();
  if (k == n) {
    ac.holds = true;
    return ac;
  }
  // Orthonormal basis of null(L): trailing columns of the Q factor of L'.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(p.L.transpose());
  Eigen::MatrixXd q = qr.householderQ();
  ac.F = q.rightCols(n - k);
  const Eigen::MatrixXd& F = *ac.F;

  const Eigen::MatrixXd core = F.transpose() * p.AtA * F;
  ac.l1 = sym_eig_min(0.5 * (core + core.transpose()));

  Eigen::MatrixXd bordered(n - k + 1, n - k + 1);
  bordered.topLeftCorner(n - k, n - k) = core;
  bordered.topRightCorner(n - k, 1) = F.transpose() * p.Atb;
  bordered.bottomLeftCorner(1, n - k) = bordered.topRightCorner(n - k, 1).transpose();
  bordered(n - k, n - k) = p.btb;
  ac.l2 = sym_eig_min(0.5 * (bordered + bordered.transpose()));

  ac.holds = ac.l2 < ac.l1;
  return ac;
}

AlphaLower alpha_lower(const ProblemInstance& p, double epsilon,
                       const AssumptionCheck& ac) {
  AlphaLower out;
  if (p.b_is_zero()) {
    out.alpha_min = 1.0;
    out.degenerate_case = DegenerateCase::b_zero;
    return out;
  }
  if (p.atb_is_zero()) {
    if (!(epsilon > 0.0) || epsilon >= p.btb)
      throw std::invalid_argument(
          "alpha_lower: epsilon must lie in (0, ||b||^2) when A'b = 0");
    out.alpha_min = p.btb / (p.btb - epsilon);
    out.degenerate_case = DegenerateCase::atb_zero;
    return out;
  }

  const Eigen::MatrixXd M = p.AtA + p.rho * p.LtL;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("alpha_lower: A'A + rho L'L is not positive definite");
  const double ridge_min = p.btb - p.Atb.dot(llt.solve(p.Atb));

  double kappa1 = ridge_min;
  if (p.k() < p.n()) kappa1 = std::min(ac.l2, ridge_min);
  const double kappa2 = sym_eig_min(M) - kappa1;
  const double natb = p.Atb.norm();
  const double rhs = p.btb - kappa1;  // > 0 since kappa1 < ||b||^2

  double r = 0.0;
  if (std::abs(kappa2) <= 1e-14 * std::max(1.0, std::abs(kappa1))) {
    r = rhs / (2.0 * natb);
  } else {
    double disc = natb * natb - kappa2 * rhs;
    if (disc < 0.0 && kappa2 > 0.0) disc = 0.0;  // rounding guard; a real root exists
    r = (natb - std::sqrt(disc)) / kappa2;
  }
  out.kappa1 = kappa1;
  out.kappa2 = kappa2;
  out.alpha_min = 1.0 + r * r;
  out.degenerate_case = DegenerateCase::generic;
  return out;
}

double alpha_upper_beck(const ProblemInstance& p, const AssumptionCheck& ac) {
  if (!ac.holds)
    throw std::invalid_argument("alpha_upper_beck: attainment assumption fails");
  const double zeta_min = sym_eig_min(p.L * p.L.transpose());
  if (p.k() == p.n()) return 1.0 + p.btb / (p.rho * zeta_min);

  const double l1 = ac.l1, l2 = ac.l2;
  if (!(l1 - l2 > 0.0))
    throw std::invalid_argument("alpha_upper_beck: bound undefined (l1 - l2 <= 0)");
  const double delta = l2 / (p.rho * zeta_min);
  const double lam_max = sym_eig_max(p.AtA);
  const double natb = p.Atb.norm();
  const double inner = (p.btb + (lam_max + natb) * (delta + 2.0 * std::sqrt(delta)) +
                        l1 * (1.0 + delta)) /
                       (l1 - l2);
  const double bound = std::pow(std::max(1.0, inner), 2) + delta;
  return 1.0 + bound;
}

double alpha_upper_new(const ProblemInstance& p, const AssumptionCheck& ac) {
  if (!ac.holds)
    throw std::invalid_argument("alpha_upper_new: attainment assumption fails");
  const double zeta = p.rho * sym_eig_min(p.L * p.L.transpose());
  if (p.k() == p.n()) return 1.0 + p.btb / zeta;

  const double l1 = ac.l1, l2 = ac.l2;
  if (!(l1 - l2 > 0.0))
    throw std::invalid_argument("alpha_upper_new: bound undefined (l1 - l2 <= 0)");
  if (!(zeta > 0.0))
    throw std::invalid_argument("alpha_upper_new: rho lambda_min(L L') must be positive");
  const double beta = 2.0 * sym_eig_max(p.AtA);
  const double gamma = 2.0 * p.Atb.norm();

  const double t1 =
      -0.5 + l2 / (2.0 * zeta) +
      std::sqrt((zeta - l2) * (zeta - l2) + beta * beta + 4.0 * zeta * l2 +
                gamma * gamma * zeta / (l1 - l2)) /
          (2.0 * zeta);
  const double root2 =
      (gamma + std::sqrt(gamma * gamma +
                         (l1 - l2) * (4.0 * l2 + beta * beta / zeta +
                                      (zeta - l2) * (zeta - l2) / zeta))) /
      (2.0 * (l1 - l2));
  const double t2 = root2 * root2;
  return 1.0 + t1 + t2;
}

double lambda_bound_u(const ProblemInstance& p, double alpha_min) {
  if (!(alpha_min > 1.0))
    throw std::invalid_argument("lambda_bound_u: alpha_min must exceed 1");
  const Eigen::MatrixXd q = (1.0 / alpha_min) * p.AtA + p.rho * p.LtL;
  return p.Atb.norm() / (alpha_min * std::sqrt(alpha_min - 1.0)) + sym_eig_min(q);
}

namespace {

// The worst-case count easily exceeds the integer range for wide intervals;
// saturate instead of overflowing.
long long saturating_ceil(double v) {
  constexpr long long cap = std::numeric_limits<long long>::max();
  if (!(v < static_cast<double>(cap))) return cap;
  return static_cast<long long>(std::ceil(v));
}

} // namespace

long long iteration_bound(const ProblemInstance& p, double alpha_min,
                          double alpha_max, double epsilon) {
  if (p.atb_is_zero() && !p.b_is_zero()) {
    const double lam = sym_eig_min(p.AtA + p.rho * p.LtL);
    const double v =
        4.0 * alpha_max * alpha_max * (alpha_max - 1.0) * lam / epsilon;
    return saturating_ceil(v);
  }
  const double u = lambda_bound_u(p, alpha_min);
  const double v = 4.0 * u * alpha_max * alpha_max * (alpha_max - alpha_min) /
                   (alpha_min * alpha_min * epsilon);
  return saturating_ceil(v);
}

BoundReport compute_bounds(const ProblemInstance& p, double epsilon) {
  BoundReport rep;
  AssumptionCheck ac = check_assumption(p);
  rep.assumption_holds = ac.holds;
  rep.l1 = ac.l1;
  rep.l2 = ac.l2;
  rep.F = std::move(ac.F);

  if (p.b_is_zero()) {
    rep.alpha_min = rep.alpha_max = 1.0;
    rep.degenerate_case = DegenerateCase::b_zero;
    return rep;
  }
  if (!rep.assumption_holds) return rep;

  const double zeta_min = sym_eig_min(p.L * p.L.transpose());
  rep.zeta = p.rho * zeta_min;
  rep.beta = 2.0 * sym_eig_max(p.AtA);
  rep.gamma = 2.0 * p.Atb.norm();
  rep.delta = p.k() < p.n() ? rep.l2 / rep.zeta : 0.0;

  AlphaLower lower = alpha_lower(p, epsilon, ac);
  rep.alpha_min = lower.alpha_min;
  rep.degenerate_case = lower.degenerate_case;
  rep.kappa1 = lower.kappa1;
  rep.kappa2 = lower.kappa2;
  rep.alpha_max = alpha_upper_new(p, ac);
  return rep;
}

} // namespace rtls
