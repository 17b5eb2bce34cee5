#include <cmath>

#include <doctest.h>

#include "rtls/solvers.hpp"
#include "rtls/underestimate.hpp"
#include "test_util.hpp"

using namespace rtls;
using rtls_test::demo2x2;

namespace {

GEvaluation fake_eval(double alpha, double g, double lambda) {
  GEvaluation ev;
  ev.alpha = alpha;
  ev.g_value = g;
  ev.lambda = lambda;
  return ev;
}

} // namespace

TEST_CASE("underestimator is tight at both endpoints") {
  ProblemInstance p = demo2x2();
  const double pairs[][2] = {{1.1, 40.0}, {1.5, 3.0}, {2.0, 2000.0}, {5.0, 11.6}};
  for (const auto& pr : pairs) {
    GEvaluation lo = eval_g(p, pr[0]);
    GEvaluation hi = eval_g(p, pr[1]);
    Underestimator u = fit_underestimator(lo, hi);
    CHECK(u.value(pr[0]) ==
          doctest::Approx(lo.g_value).epsilon(1e-8).scale(1.0 + std::abs(lo.g_value)));
    CHECK(u.value(pr[1]) ==
          doctest::Approx(hi.g_value).epsilon(1e-8).scale(1.0 + std::abs(hi.g_value)));
  }
}

TEST_CASE("coefficients reduce correctly for a constant-multiplier pair") {
  // lambda constant and g linear in alpha: c1 = lambda, and the remaining
  // coefficients follow by substitution.
  const double lam = -0.3, slope = 0.05, offset = 1.2;
  const double a1 = 2.0, a2 = 6.0;
  GEvaluation lo = fake_eval(a1, slope * a1 + offset, lam);
  GEvaluation hi = fake_eval(a2, slope * a2 + offset, lam);
  Underestimator u = fit_underestimator(lo, hi);
  CHECK(u.c1 == doctest::Approx(lam).epsilon(1e-12));
  CHECK(u.c2 == doctest::Approx(a1 * a2 * (lam - slope)).epsilon(1e-12));
  CHECK(u.c3 ==
        doctest::Approx(slope * (a1 + a2) + offset - lam * (a1 + a2)).epsilon(1e-12));
}

TEST_CASE("fit_underestimator rejects coincident endpoints") {
  GEvaluation lo = fake_eval(2.0, 1.0, 0.1);
  GEvaluation hi = fake_eval(2.0 + 1e-14, 1.0, 0.1);
  CHECK_THROWS_AS(fit_underestimator(lo, hi), std::invalid_argument);
  CHECK_THROWS_AS(fit_underestimator(hi, lo), std::invalid_argument);
}

TEST_CASE("interval minimum: interior case and endpoint cases") {
  SUBCASE("interior minimizer") {
    Underestimator u{1.0, 4.0, 0.0, 1.0, 10.0};
    GEvaluation lo = fake_eval(1.0, u.value(1.0), 0.0);
    GEvaluation hi = fake_eval(10.0, u.value(10.0), 0.0);
    IntervalBound b = interval_lower_bound(u, lo, hi);
    REQUIRE(b.split_point.has_value());
    CHECK(*b.split_point == doctest::Approx(2.0));
    CHECK(b.lb == doctest::Approx(4.0));
    // stationarity of the underestimator at the split point
    CHECK(u.c1 - u.c2 / (*b.split_point * *b.split_point) ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("both coefficients negative: smaller endpoint, no split") {
    Underestimator u{-1.0, -1.0, 0.0, 1.0, 2.0};
    GEvaluation lo = fake_eval(1.0, u.value(1.0), 0.0);   // -2
    GEvaluation hi = fake_eval(2.0, u.value(2.0), 0.0);   // -2.5
    IntervalBound b = interval_lower_bound(u, lo, hi);
    CHECK_FALSE(b.split_point.has_value());
    CHECK(b.lb == doctest::Approx(-2.5));
  }
  SUBCASE("stationary point outside the interval routes to an endpoint") {
    Underestimator u{1.0, 4.0, 0.0, 3.0, 10.0};  // sqrt(c2/c1) = 2 < 3
    GEvaluation lo = fake_eval(3.0, u.value(3.0), 0.0);
    GEvaluation hi = fake_eval(10.0, u.value(10.0), 0.0);
    IntervalBound b = interval_lower_bound(u, lo, hi);
    CHECK_FALSE(b.split_point.has_value());
    CHECK(b.lb == doctest::Approx(std::min(u.value(3.0), u.value(10.0))));
  }
}

TEST_CASE("first split point of the 2x2 demo on the reference root interval") {
  ProblemInstance p = demo2x2();
  // Endpoints as reported for this instance's search interval.
  GEvaluation lo = eval_g(p, 1.0266);
  GEvaluation hi = eval_g(p, 3355.5794);
  IntervalNode node = make_node(lo, hi);
  REQUIRE(node.split_point.has_value());
  CHECK(*node.split_point == doctest::Approx(59.1724).epsilon(2e-5));
}

TEST_CASE("split point of the computed root interval (regression)") {
  ProblemInstance p = demo2x2();
  BoundReport rep = compute_bounds(p, 1e-6);
  IntervalNode node = make_node(eval_g(p, rep.alpha_min), eval_g(p, rep.alpha_max));
  REQUIRE(node.split_point.has_value());
  // Frozen from the numpy oracle of the same pipeline.
  CHECK(*node.split_point == doctest::Approx(59.1399).epsilon(2e-4));
}

TEST_CASE("dominance: the underestimator never exceeds g on sampled points") {
  ProblemInstance p = demo2x2();
  NormalSampler rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = 1.05 + std::abs(rng.next()) * 5.0;
    const double a2 = a1 + 0.5 + std::abs(rng.next()) * 100.0;
    Underestimator u = fit_underestimator(eval_g(p, a1), eval_g(p, a2));
    for (int i = 0; i < 50; ++i) {
      const double alpha = a1 + (a2 - a1) * i / 49.0;
      CHECK(u.value(alpha) <= eval_g(p, alpha).g_value + 1e-6);
    }
  }
}

TEST_CASE("dominance holds on random instances as well") {
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    ProblemInstance p = rtls_test::random_instance(seed, 5, 4, 2, 0.6);
    NormalSampler rng(seed);
    for (int trial = 0; trial < 4; ++trial) {
      const double a1 = 1.05 + std::abs(rng.next()) * 3.0;
      const double a2 = a1 + 0.5 + std::abs(rng.next()) * 30.0;
      Underestimator u = fit_underestimator(eval_g(p, a1), eval_g(p, a2));
      for (int i = 0; i < 25; ++i) {
        const double alpha = a1 + (a2 - a1) * i / 24.0;
        CHECK(u.value(alpha) <= eval_g(p, alpha).g_value + 1e-6);
      }
    }
  }
}

TEST_CASE("exhausted intervals have their minimum at an endpoint") {
  ProblemInstance p = demo2x2();
  const double candidates[][2] = {
      {1.05, 1.4}, {12.0, 20.0}, {2.0, 5.0}, {1.7, 2.5}, {20.0, 200.0}};
  int exhausted = 0;
  for (const auto& c : candidates) {
    GEvaluation lo = eval_g(p, c[0]);
    GEvaluation hi = eval_g(p, c[1]);
    IntervalNode node = make_node(lo, hi);
    if (node.split_point) continue;
    ++exhausted;
    double grid_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i)
      grid_min = std::min(grid_min,
                          eval_g(p, c[0] + (c[1] - c[0]) * i / 199.0).g_value);
    CHECK(std::min(lo.g_value, hi.g_value) ==
          doctest::Approx(grid_min).epsilon(1e-5));
  }
  CHECK(exhausted > 0);  // the candidate list must actually exercise the branch
}

TEST_CASE("node lower bound never exceeds the endpoint values") {
  ProblemInstance p = demo2x2();
  BoundReport rep = compute_bounds(p, 1e-6);
  IntervalNode node = make_node(eval_g(p, rep.alpha_min), eval_g(p, rep.alpha_max));
  CHECK(node.lb <= std::min(node.eval_lo.g_value, node.eval_hi.g_value));
  CHECK(node.alpha_lo < node.alpha_hi);
}
