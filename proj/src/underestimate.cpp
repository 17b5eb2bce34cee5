#include "rtls/underestimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtls {

Underestimator fit_underestimator(const GEvaluation& eval_lo,
                                  const GEvaluation& eval_hi) {
  const double a1 = eval_lo.alpha;
  const double a2 = eval_hi.alpha;
  if (!(a1 < a2) || a2 - a1 <= 1e-12 * a2)
    throw std::invalid_argument("fit_underestimator: endpoints coincide");

  const double g1 = eval_lo.g_value;
  const double g2 = eval_hi.g_value;
  const double width = a2 - a1;

  Underestimator u;
  u.alpha_lo = a1;
  u.alpha_hi = a2;
  u.c1 = (a2 * eval_hi.lambda - a1 * eval_lo.lambda) / width;
  u.c2 = a1 * a2 * (u.c1 - (g2 - g1) / width);
  u.c3 = (a2 * g2 - a1 * g1) / width - u.c1 * (a2 + a1);
  return u;
}

IntervalBound interval_lower_bound(const Underestimator& u,
                                   const GEvaluation& eval_lo,
                                   const GEvaluation& eval_hi) {
  IntervalBound out;
  const double endpoint_min = std::min(eval_lo.g_value, eval_hi.g_value);
  const double tau = 1e-14 * (1.0 + std::abs(u.c3));
  if (u.c1 > tau && u.c2 > tau) {
    const double split = std::sqrt(u.c2 / u.c1);
    const double margin = 1e-10 * (u.alpha_hi - u.alpha_lo);
    if (split > u.alpha_lo + margin && split < u.alpha_hi - margin) {
      out.lb = std::min(2.0 * std::sqrt(u.c1 * u.c2) + u.c3, endpoint_min);
      out.split_point = split;
      return out;
    }
  }
  // Interior-minimizer condition fails: the true interval minimum of g is
  // the smaller endpoint value, so the node needs no further subdivision.
  out.lb = endpoint_min;
  return out;
}

IntervalNode make_node(const GEvaluation& eval_lo, const GEvaluation& eval_hi) {
  const Underestimator u = fit_underestimator(eval_lo, eval_hi);
  const IntervalBound b = interval_lower_bound(u, eval_lo, eval_hi);
  IntervalNode node;
  node.lb = b.lb;
  node.alpha_lo = eval_lo.alpha;
  node.alpha_hi = eval_hi.alpha;
  node.eval_lo = eval_lo;
  node.eval_hi = eval_hi;
  node.split_point = b.split_point;
  return node;
}

} // namespace rtls
