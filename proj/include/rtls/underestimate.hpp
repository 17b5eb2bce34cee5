#ifndef RTLS_UNDERESTIMATE_HPP
#define RTLS_UNDERESTIMATE_HPP

#include <optional>

#include "rtls/trs.hpp"

namespace rtls {

/// Closed-form underestimator of g over [alpha_lo, alpha_hi]:
///   g_under(alpha) = c1 alpha + c2 / alpha + c3,
/// built from the endpoint evaluations only and tight at both endpoints.
struct Underestimator {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double alpha_lo = 1.0;
  double alpha_hi = 1.0;

  double value(double alpha) const { return c1 * alpha + c2 / alpha + c3; }
};

/// One branch-and-bound node: interval, endpoint evaluations, lower bound
/// and, when the interior-minimizer condition holds, the split point.
struct IntervalNode {
  double lb = 0.0;
  double alpha_lo = 1.0;
  double alpha_hi = 1.0;
  GEvaluation eval_lo;
  GEvaluation eval_hi;
  std::optional<double> split_point;
};

Underestimator fit_underestimator(const GEvaluation& eval_lo,
                                  const GEvaluation& eval_hi);

struct IntervalBound {
  double lb = 0.0;
  std::optional<double> split_point;
};

/// Minimum of the underestimator over its interval.  When c1 > 0, c2 > 0 and
/// sqrt(c2/c1) is strictly interior, the minimum is 2 sqrt(c1 c2) + c3 at the
/// split point; otherwise the interval minimum of g itself equals the smaller
/// endpoint value and the node is exhausted.
IntervalBound interval_lower_bound(const Underestimator& u,
                                   const GEvaluation& eval_lo,
                                   const GEvaluation& eval_hi);

/// Convenience: fit + bound in one step.
IntervalNode make_node(const GEvaluation& eval_lo, const GEvaluation& eval_hi);

} // namespace rtls

#endif
