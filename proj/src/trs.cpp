#include "rtls/trs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rtls/kernels.hpp"

namespace rtls {

TrsProblem build_trs(const ProblemInstance& p, double alpha) {
  if (!(alpha >= 1.0))
    throw std::invalid_argument("build_trs: alpha must be >= 1");
  TrsProblem trs;
  trs.Q = (1.0 / alpha) * p.AtA + p.rho * p.LtL;
  trs.f = (1.0 / alpha) * p.Atb;
  trs.radius_sq = alpha - 1.0;
  trs.alpha = alpha;
  return trs;
}

namespace {

// Deterministic sign convention: positive first nonzero component.
Eigen::VectorXd oriented(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) return v(i) > 0.0 ? v : Eigen::VectorXd(-v);
  }
  return v;
}

} // namespace

TrsSolution solve_trs(const TrsProblem& trs, const TrsOptions& opt) {
  const Eigen::Index n = trs.Q.rows();
  const double sym_err = (trs.Q - trs.Q.transpose()).lpNorm<Eigen::Infinity>();
  if (sym_err > 1e-10 * std::max(1.0, trs.Q.lpNorm<Eigen::Infinity>()))
    throw std::invalid_argument("solve_trs: Q is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(trs.Q);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("solve_trs: eigendecomposition failed");
  const Eigen::VectorXd& w = eig.eigenvalues();   // ascending
  const Eigen::MatrixXd& V = eig.eigenvectors();
  const double lam_min = w(0);

  TrsSolution sol;
  if (trs.radius_sq <= 0.0) {
    sol.x = Eigen::VectorXd::Zero(n);
    sol.lambda = lam_min;
    sol.hard_case = false;
    return sol;
  }

  const Eigen::VectorXd d = V.transpose() * trs.f;
  const double nf = trs.f.norm();
  const double r2 = trs.radius_sq;
  const double r = std::sqrt(r2);

  // Bottom eigenspace of Q, up to spectral resolution.
  const double gap_tol = 1e-12 * std::max(1.0, w(n - 1) - lam_min);
  Eigen::Index bottom_end = 0;  // first index past the bottom eigenspace
  while (bottom_end < n && w(bottom_end) - lam_min <= gap_tol) ++bottom_end;

  double d_bottom_max = 0.0;
  for (Eigen::Index i = 0; i < bottom_end; ++i)
    d_bottom_max = std::max(d_bottom_max, std::abs(d(i)));
  const bool orthogonal = nf == 0.0 || d_bottom_max <= opt.hard_case_tol * nf;

  const auto interior_x = [&](double lam, Eigen::Index from) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = from; i < n; ++i) y(i) = d(i) / (w(i) - lam);
    return Eigen::VectorXd(V * y);
  };

  if (orthogonal) {
    // Interior norm with the bottom components removed, at lambda = lam_min.
    double s2 = 0.0;
    for (Eigen::Index i = bottom_end; i < n; ++i) {
      const double e = w(i) - lam_min;
      s2 += (d(i) / e) * (d(i) / e);
    }
    if (s2 <= r2) {
      // Hard case: top up along the bottom eigenvector.
      const double tau = std::sqrt(r2 - s2);
      sol.x = interior_x(lam_min, bottom_end) + tau * oriented(V.col(0));
      sol.lambda = lam_min;
      sol.hard_case = true;
      return sol;
    }
  }

  // Secular equation phi(lam) = sum d_i^2/(w_i - lam)^2 - r^2 = 0 on
  // (-inf, lam_min); phi is increasing there, so a bracket is kept while a
  // Newton iteration on the reciprocal norm 1/||x(lam)|| - 1/r supplies the
  // fast steps.
  double lo = lam_min - nf / r - 1.0;  // phi(lo) < 0
  double hi = lam_min;                 // phi -> +inf (or >= 0) as lam -> hi
  double lam = lam_min - nf / r;
  const double feas_tol = opt.feas_tol_rel * trs.alpha;

  int it = 0;
  for (; it < opt.max_secular_iterations; ++it) {
    double n2 = 0.0, dn2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double e = w(i) - lam;
      const double t = d(i) / e;
      n2 += t * t;
      dn2 += 2.0 * t * t / e;
    }
    if (std::abs(n2 - r2) <= feas_tol) break;
    if (n2 > r2)
      hi = lam;
    else
      lo = lam;
    // Resolution limit relative to the endpoint magnitudes; an absolute
    // floor would cut the search off early when the spectrum sits near zero.
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(lo), std::abs(hi))) {
      // Bracket exhausted short of the radius: nearly hard case.  Take the
      // short side and top up along the bottom eigenvector; the residual the
      // extra component introduces has size (lam_min - lo) ~ ulp(lambda).
      lam = lo;
      double n2lo = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double e = w(i) - lam;
        n2lo += (d(i) / e) * (d(i) / e);
      }
      if (n2lo < r2) {
        // The interior vector already has a bottom-eigenvector component;
        // solve for the top-up with the cross term so the norm lands on r.
        const Eigen::VectorXd v0 = oriented(V.col(0));
        const Eigen::VectorXd xi = interior_x(lam, 0);
        const double c = v0.dot(xi);
        const double tau = -c + std::sqrt(c * c + r2 - n2lo);
        sol.x = xi + tau * v0;
        sol.lambda = lam;
        sol.hard_case = true;
        return sol;
      }
      break;
    }
    const double h = 1.0 / std::sqrt(n2) - 1.0 / r;
    const double dh = -0.5 * dn2 / (n2 * std::sqrt(n2));
    double next = lam - h / dh;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lam = next;
  }
  if (it >= opt.max_secular_iterations)
    throw std::runtime_error(
        "solve_trs: secular iteration exceeded max iterations (tolerance too tight)");

  sol.x = interior_x(lam, 0);
  sol.lambda = lam;
  sol.hard_case = false;
  return sol;
}

GEvaluation eval_g(const ProblemInstance& p, double alpha, const TrsOptions& opt) {
  if (!(alpha >= 1.0))
    throw std::invalid_argument("eval_g: alpha must be >= 1");
  const TrsProblem trs = build_trs(p, alpha);
  GEvaluation ev;
  ev.alpha = alpha;
  if (alpha == 1.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(trs.Q);
    if (eig.info() != Eigen::Success)
      throw std::runtime_error("eval_g: eigendecomposition failed");
    ev.x = Eigen::VectorXd::Zero(p.n());
    ev.lambda = eig.eigenvalues()(0);
    ev.g_value = p.btb;
    ev.hard_case = false;
    return ev;
  }
  TrsSolution sol = solve_trs(trs, opt);
  ev.x = std::move(sol.x);
  ev.lambda = sol.lambda;
  ev.hard_case = sol.hard_case;

  // The two objective forms are algebraically identical; a mismatch beyond
  // roundoff signals a broken Gram cache or solver state.  The bilinear form
  // cancels between products of size ||Q|| ||x||^2, so the roundoff budget
  // scales with that magnitude, not with the (possibly tiny) value.
  const double quad =
      ev.x.dot(trs.Q * ev.x) - 2.0 * trs.f.dot(ev.x) + p.btb / alpha;
  const double frac = (p.A * ev.x - p.b).squaredNorm() / alpha +
                      p.rho * (p.L * ev.x).squaredNorm();
  const double x2 = ev.x.squaredNorm();
  const double scale = 1.0 + frac + p.btb / alpha +
                       static_cast<double>(p.n()) *
                           (trs.Q.lpNorm<Eigen::Infinity>() * x2) +
                       2.0 * trs.f.norm() * std::sqrt(x2);
  if (std::abs(quad - frac) >
      64.0 * std::numeric_limits<double>::epsilon() * scale)
    throw std::runtime_error("eval_g: quadratic and fractional objective forms disagree");
  ev.g_value = frac;
  return ev;
}

double grad_g(const GEvaluation& ev, const ProblemInstance& p) {
  const double res = (p.A * ev.x - p.b).squaredNorm();
  return ev.lambda - res / (ev.alpha * ev.alpha);
}

GEvaluation eval_g_with_deriv(const ProblemInstance& p, double alpha,
                              const TrsOptions& opt) {
  GEvaluation ev = eval_g(p, alpha, opt);
  if (alpha > 1.0) ev.g_deriv = grad_g(ev, p);
  return ev;
}

std::vector<GEvaluation> eval_g_many_serial(const ProblemInstance& p,
                                            const std::vector<double>& alphas,
                                            const TrsOptions& opt) {
  std::vector<GEvaluation> out(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i)
    out[i] = eval_g_with_deriv(p, alphas[i], opt);
  return out;
}

std::vector<GEvaluation> eval_g_many_parallel(const ProblemInstance& p,
                                              const std::vector<double>& alphas,
                                              const TrsOptions& opt) {
  std::vector<GEvaluation> out(alphas.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(alphas.size()); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = eval_g_with_deriv(p, alphas[static_cast<std::size_t>(i)], opt);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

std::vector<GEvaluation> eval_g_many(const ProblemInstance& p,
                                     const std::vector<double>& alphas,
                                     const TrsOptions& opt) {
  return kernels::parallel_enabled() ? eval_g_many_parallel(p, alphas, opt)
                                     : eval_g_many_serial(p, alphas, opt);
}

} // namespace rtls
