#include "rtls/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

namespace rtls {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SolveReport zero_b_report(const ProblemInstance& p, Algorithm algo) {
  SolveReport rep;
  rep.algorithm = algo;
  rep.alpha_star = 1.0;
  rep.x_star = Eigen::VectorXd::Zero(p.n());
  rep.objective = 0.0;
  rep.certificate = true;
  rep.certified_gap = 0.0;
  rep.iterations = 0;
  rep.bounds.alpha_min = rep.bounds.alpha_max = 1.0;
  rep.bounds.assumption_holds = true;
  rep.bounds.degenerate_case = DegenerateCase::b_zero;
  return rep;
}

struct QueueEntry {
  double lb;
  long seq;
  bool operator<(const QueueEntry& o) const {
    return lb < o.lb || (lb == o.lb && seq < o.seq);
  }
};

} // namespace

SolveReport btd_solve(const ProblemInstance& p, const SolverConfig& cfg) {
  const auto t0 = Clock::now();
  if (p.b_is_zero()) {
    SolveReport rep = zero_b_report(p, Algorithm::btd);
    rep.wall_time_s = seconds_since(t0);
    return rep;
  }

  SolveReport rep;
  rep.algorithm = Algorithm::btd;
  rep.bounds = compute_bounds(p, cfg.epsilon);
  if (!rep.bounds.assumption_holds)
    throw AssumptionError(
        "btd_solve: attainment assumption fails (l2 >= l1); interval bounds undefined");

  const double eps = cfg.epsilon;
  const double a1 = rep.bounds.alpha_min;
  const double a2 = rep.bounds.alpha_max;
  long k = 0;

  const auto note = [&](TraceEvent::Kind kind, double lo, double hi, double alpha,
                        double value, double ub) {
    rep.trace.push_back({kind, k, lo, hi, alpha, value, ub});
  };

  const auto finish = [&](double ub, double alpha_star, Eigen::VectorXd x_star,
                          double gap, bool cert) {
    // The A'b = 0 branch must also consider alpha = 1, where g equals ||b||^2.
    if (rep.bounds.degenerate_case == DegenerateCase::atb_zero && p.btb < ub) {
      ub = p.btb;
      alpha_star = 1.0;
      x_star = Eigen::VectorXd::Zero(p.n());
      note(TraceEvent::Kind::incumbent, 1.0, 1.0, 1.0, ub, ub);
    }
    rep.alpha_star = alpha_star;
    rep.x_star = std::move(x_star);
    rep.objective = ub;
    rep.certificate = cert;
    rep.certified_gap = gap;
    rep.iterations = k;
    rep.wall_time_s = seconds_since(t0);
    return rep;
  };

  if (!(a2 - a1 > 1e-12 * a2)) {
    // Degenerate interval: a single evaluation settles it.
    GEvaluation ev = eval_g(p, a1, cfg.trs);
    k = 1;
    note(TraceEvent::Kind::evaluate, a1, a2, a1, ev.g_value, ev.g_value);
    return finish(ev.g_value, a1, std::move(ev.x), 0.0, true);
  }

  GEvaluation e1 = eval_g(p, a1, cfg.trs);
  ++k;
  note(TraceEvent::Kind::evaluate, a1, a2, a1, e1.g_value, e1.g_value);
  GEvaluation e2 = eval_g(p, a2, cfg.trs);
  ++k;

  double ub = e1.g_value;
  double alpha_star = a1;
  Eigen::VectorXd x_star = e1.x;
  if (e2.g_value < ub) {
    ub = e2.g_value;
    alpha_star = a2;
    x_star = e2.x;
  }
  note(TraceEvent::Kind::evaluate, a1, a2, a2, e2.g_value, ub);

  // Node storage ordered by (lb, creation sequence); pop the least lb,
  // earliest created on ties.
  long seq = 0;
  std::set<QueueEntry> queue;
  std::vector<IntervalNode> nodes;
  double pruned_min = std::numeric_limits<double>::infinity();

  IntervalNode current = make_node(e1, e2);
  if (!current.split_point) {
    // The root interval minimum of g equals the better endpoint: exact.
    note(TraceEvent::Kind::exhausted, a1, a2, 0.0, current.lb, ub);
    return finish(ub, alpha_star, std::move(x_star), 0.0, true);
  }

  while (true) {
    if (!current.split_point) {
      // Exhausted node (its interval cannot improve on its endpoints).
      // Unreachable through the insertion filter, kept for safety.
      note(TraceEvent::Kind::exhausted, current.alpha_lo, current.alpha_hi, 0.0,
           current.lb, ub);
    } else {
      if (k >= cfg.max_iterations) {
        rep.cap_hit = true;
        double lb_cert = std::min(current.lb, pruned_min);
        for (const auto& qe : queue) lb_cert = std::min(lb_cert, qe.lb);
        const double gap = std::max(0.0, ub - lb_cert);
        return finish(ub, alpha_star, std::move(x_star), gap, gap <= eps);
      }

      const double split = *current.split_point;
      GEvaluation mid = eval_g(p, split, cfg.trs);
      ++k;
      note(TraceEvent::Kind::evaluate, current.alpha_lo, current.alpha_hi,
           split, mid.g_value, ub);
      if (mid.g_value < ub) {
        ub = mid.g_value;
        alpha_star = split;
        x_star = mid.x;
        note(TraceEvent::Kind::incumbent, current.alpha_lo, current.alpha_hi,
             split, ub, ub);
      }

      for (IntervalNode child :
           {make_node(current.eval_lo, mid), make_node(mid, current.eval_hi)}) {
        if (child.lb < ub - eps) {
          note(TraceEvent::Kind::node_pushed, child.alpha_lo, child.alpha_hi,
               child.split_point.value_or(0.0), child.lb, ub);
          queue.insert({child.lb, seq});
          nodes.push_back(std::move(child));
          ++seq;
        } else {
          pruned_min = std::min(pruned_min, child.lb);
          note(TraceEvent::Kind::node_pruned, child.alpha_lo, child.alpha_hi,
               child.split_point.value_or(0.0), child.lb, ub);
        }
      }
    }

    if (queue.empty()) {
      const double lb_cert = std::min(pruned_min, ub);
      const double gap = std::max(0.0, ub - lb_cert);
      return finish(ub, alpha_star, std::move(x_star), gap, true);
    }

    const QueueEntry top = *queue.begin();
    queue.erase(queue.begin());
    current = std::move(nodes[static_cast<std::size_t>(top.seq)]);
    note(TraceEvent::Kind::node_popped, current.alpha_lo, current.alpha_hi,
         current.split_point.value_or(0.0), current.lb, ub);
    if (top.lb >= ub - eps) {
      const double lb_cert = std::min({top.lb, pruned_min, ub});
      const double gap = std::max(0.0, ub - lb_cert);
      return finish(ub, alpha_star, std::move(x_star), gap, true);
    }
  }
}

SolveReport trtlsg_solve(const ProblemInstance& p, const SolverConfig& cfg,
                         std::optional<double> lb_star) {
  const auto t0 = Clock::now();
  if (cfg.stopping_mode == StoppingMode::certified_gap && !lb_star)
    throw std::invalid_argument(
        "trtlsg_solve: certified_gap stopping requires lb_star from a prior btd_solve");
  if (p.b_is_zero()) {
    SolveReport rep = zero_b_report(p, Algorithm::trtlsg);
    rep.wall_time_s = seconds_since(t0);
    return rep;
  }

  SolveReport rep;
  rep.algorithm = Algorithm::trtlsg;
  rep.bounds = compute_bounds(p, cfg.epsilon);
  if (!rep.bounds.assumption_holds)
    throw AssumptionError("trtlsg_solve: attainment assumption fails");

  AssumptionCheck ac;
  ac.holds = rep.bounds.assumption_holds;
  ac.l1 = rep.bounds.l1;
  ac.l2 = rep.bounds.l2;

  double lo, hi;
  if (cfg.use_improved_bounds) {
    lo = rep.bounds.alpha_min;
    hi = rep.bounds.alpha_max;
  } else {
    lo = 1.0 + cfg.epsilon1;
    hi = alpha_upper_beck(p, ac);
  }

  long k = 0;
  std::optional<GEvaluation> hi_eval;
  bool gap_met = false;

  while (true) {
    if (cfg.stopping_mode == StoppingMode::certified_gap && hi_eval &&
        hi_eval->g_value <= *lb_star + cfg.epsilon) {
      gap_met = true;
      break;
    }
    if (std::abs(hi - lo) <= cfg.epsilon2) break;
    if (k >= cfg.max_iterations) {
      rep.cap_hit = true;
      break;
    }
    const double mid = 0.5 * (lo + hi);
    GEvaluation ev = eval_g_with_deriv(p, mid, cfg.trs);
    ++k;
    rep.trace.push_back({TraceEvent::Kind::evaluate, k, lo, hi, mid, ev.g_value,
                         hi_eval ? hi_eval->g_value : ev.g_value});
    // Derivatives within 1e-14 of zero take the lower branch.
    if (*ev.g_deriv > 1e-14) {
      hi = mid;
      hi_eval = std::move(ev);
    } else {
      lo = mid;
    }
  }

  if (!hi_eval || hi_eval->alpha != hi) {
    hi_eval = eval_g(p, hi, cfg.trs);
    ++k;
  }

  rep.alpha_star = hi;
  rep.x_star = hi_eval->x;
  rep.objective = hi_eval->g_value;
  rep.iterations = k;
  if (cfg.stopping_mode == StoppingMode::certified_gap && gap_met) {
    rep.certificate = true;
    rep.certified_gap = rep.objective - *lb_star;
  } else {
    rep.certificate = false;
    rep.certified_gap = std::numeric_limits<double>::quiet_NaN();
  }
  rep.wall_time_s = seconds_since(t0);
  return rep;
}

SolveReport grid_oracle(const ProblemInstance& p, int grid_points,
                        std::optional<std::pair<double, double>> alpha_range,
                        const SolverConfig& cfg) {
  if (grid_points < 2)
    throw std::invalid_argument("grid_oracle: need at least two grid points");
  const auto t0 = Clock::now();
  if (p.b_is_zero()) {
    SolveReport rep = zero_b_report(p, Algorithm::grid_oracle);
    rep.wall_time_s = seconds_since(t0);
    return rep;
  }

  SolveReport rep;
  rep.algorithm = Algorithm::grid_oracle;
  rep.bounds = compute_bounds(p, cfg.epsilon);
  double lo, hi;
  if (alpha_range) {
    lo = alpha_range->first;
    hi = alpha_range->second;
  } else {
    if (!rep.bounds.assumption_holds)
      throw AssumptionError("grid_oracle: attainment assumption fails");
    lo = rep.bounds.alpha_min;
    hi = rep.bounds.alpha_max;
  }
  if (!(lo >= 1.0) || !(hi >= lo))
    throw std::invalid_argument("grid_oracle: bad alpha range");

  std::vector<double> alphas(static_cast<std::size_t>(grid_points));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < grid_points; ++i)
    alphas[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (grid_points - 1));
  alphas.front() = lo;
  alphas.back() = hi;

  std::vector<GEvaluation> evals = eval_g_many(p, alphas, cfg.trs);
  long k = static_cast<long>(evals.size());

  std::size_t best = 0;
  for (std::size_t i = 1; i < evals.size(); ++i)
    if (evals[i].g_value < evals[best].g_value) best = i;

  GEvaluation best_eval = evals[best];

  // Golden-section polish on the bracket around the best grid point.
  double a = alphas[best == 0 ? 0 : best - 1];
  double b = alphas[std::min(alphas.size() - 1, best + 1)];
  if (b > a) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    GEvaluation f1 = eval_g(p, x1, cfg.trs);
    GEvaluation f2 = eval_g(p, x2, cfg.trs);
    k += 2;
    while (b - a > 1e-10 * std::max(1.0, b) && k < cfg.max_iterations) {
      if (f1.g_value <= f2.g_value) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = eval_g(p, x1, cfg.trs);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = eval_g(p, x2, cfg.trs);
      }
      ++k;
    }
    const GEvaluation& polished = f1.g_value <= f2.g_value ? f1 : f2;
    if (polished.g_value < best_eval.g_value) best_eval = polished;
  }

  double ub = best_eval.g_value;
  double alpha_star = best_eval.alpha;
  Eigen::VectorXd x_star = best_eval.x;
  if (rep.bounds.degenerate_case == DegenerateCase::atb_zero && p.btb < ub) {
    ub = p.btb;
    alpha_star = 1.0;
    x_star = Eigen::VectorXd::Zero(p.n());
  }
  rep.alpha_star = alpha_star;
  rep.x_star = std::move(x_star);
  rep.objective = ub;
  rep.certificate = false;
  rep.certified_gap = std::numeric_limits<double>::quiet_NaN();
  rep.iterations = k;
  rep.wall_time_s = seconds_since(t0);
  return rep;
}

} // namespace rtls
