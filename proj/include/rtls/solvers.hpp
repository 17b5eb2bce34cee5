#ifndef RTLS_SOLVERS_HPP
#define RTLS_SOLVERS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "rtls/bounds.hpp"
#include "rtls/trs.hpp"
#include "rtls/underestimate.hpp"

namespace rtls {

/// Thrown when a solver is asked to run on an instance whose attainment
/// assumption fails; the interval bounds are undefined in that case.
struct AssumptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StoppingMode { interval_width, certified_gap };
enum class Algorithm { btd, trtlsg, grid_oracle };

struct SolverConfig {
  double epsilon = 1e-6;    // global tolerance
  double epsilon1 = 1e-1;   // bisection alpha_min offset (original interval)
  double epsilon2 = 1e-6;   // bisection interval-width tolerance
  long max_iterations = 1'000'000;  // safety cap on g evaluations
  StoppingMode stopping_mode = StoppingMode::interval_width;
  bool use_improved_bounds = true;  // improved vs original interval for the bisection
  TrsOptions trs;
};

struct TraceEvent {
  enum class Kind {
    evaluate,     // alpha, value = g(alpha)
    incumbent,    // alpha, value = new upper bound
    node_pushed,  // [alpha_lo, alpha_hi], value = lb
    node_pruned,  // [alpha_lo, alpha_hi], value = lb
    node_popped,  // [alpha_lo, alpha_hi], value = lb
    exhausted     // [alpha_lo, alpha_hi]: interval minimum equals an endpoint
  };
  Kind kind{};
  long iteration = 0;   // g-evaluation count when the event fired
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double alpha = 0.0;
  double value = 0.0;
  double ub = 0.0;
};

struct SolveReport {
  Algorithm algorithm = Algorithm::btd;
  double alpha_star = 1.0;
  Eigen::VectorXd x_star;
  double objective = 0.0;
  bool certificate = false;      // true when certified_gap is meaningful
  double certified_gap = 0.0;    // objective minus the proven lower bound
  long iterations = 0;           // number of g evaluations
  double wall_time_s = 0.0;
  bool cap_hit = false;
  BoundReport bounds;
  std::vector<TraceEvent> trace;
};

/// Branch-and-bound over the parametric interval with the two-endpoint
/// underestimator and omega-subdivision.  Returns a global solution with
/// certified_gap <= epsilon unless the iteration cap intervenes.
SolveReport btd_solve(const ProblemInstance& p, const SolverConfig& cfg);

/// Bisection on the sign of g'.  Converges to a stationary point, which may
/// be a local non-global minimizer.  In certified_gap mode the stopping rule
/// compares g at the current upper endpoint against lb_star + epsilon, where
/// lb_star comes from a prior btd_solve.
SolveReport trtlsg_solve(const ProblemInstance& p, const SolverConfig& cfg,
                         std::optional<double> lb_star = std::nullopt);

/// Dense log-spaced sweep with golden-section polish.  Test oracle only.
SolveReport grid_oracle(const ProblemInstance& p, int grid_points,
                        std::optional<std::pair<double, double>> alpha_range =
                            std::nullopt,
                        const SolverConfig& cfg = {});

} // namespace rtls

#endif
