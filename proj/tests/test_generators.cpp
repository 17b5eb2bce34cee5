#include <cmath>

#include <doctest.h>

#include <Eigen/Cholesky>

#include "rtls/generators.hpp"
#include "rtls/solvers.hpp"
#include "test_util.hpp"

using namespace rtls;

TEST_CASE("shaw system: symmetry, consistency, input validation") {
  TestSystem tiny = shaw(4);
  CHECK((tiny.a_true - tiny.a_true.transpose()).norm() == 0.0);

  TestSystem sys = shaw(20);
  CHECK((sys.a_true - sys.a_true.transpose()).norm() <=
        1e-12 * sys.a_true.norm());
  CHECK((sys.a_true * sys.x_true - sys.b_true).norm() <=
        1e-14 * sys.b_true.norm());
  CHECK(sys.x_true.minCoeff() > 0.0);  // two positive humps

  CHECK_THROWS_AS(shaw(7), std::invalid_argument);
  CHECK_THROWS_AS(shaw(2), std::invalid_argument);
}

TEST_CASE("blur matrix structure") {
  SUBCASE("band 1 is a constant diagonal") {
    Eigen::MatrixXd a = blur_matrix(16, 1);
    const double c = 1.0 / (2.0 * M_PI * 0.7 * 0.7);
    CHECK((a - c * Eigen::MatrixXd::Identity(16, 16)).norm() <= 1e-14 * c);
  }
  SUBCASE("band 3 is symmetric and nonnegative with bounded row sums") {
    const int n = 64;  // 8x8 grid
    Eigen::MatrixXd a = blur_matrix(n, 3);
    CHECK(a.rows() == n);
    CHECK((a - a.transpose()).norm() == 0.0);
    CHECK(a.minCoeff() >= 0.0);
    // Row sums of the one-dimensional factor stay below the full series.
    const double c = 1.0 / (0.7 * std::sqrt(2.0 * M_PI));
    double series = c;
    for (int d = 1; d <= 40; ++d) series += 2.0 * c * std::exp(-d * d / 0.98);
    CHECK(std::sqrt(a.rowwise().sum().maxCoeff()) <= series + 1e-12);
  }
  SUBCASE("full-size matrix keeps the structural properties") {
    Eigen::MatrixXd a = blur_matrix(1024, 3);
    CHECK(a.rows() == 1024);
    CHECK(a.cols() == 1024);
    CHECK((a - a.transpose()).norm() == 0.0);
    CHECK(a.minCoeff() >= 0.0);
  }
  CHECK_THROWS_AS(blur_matrix(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(blur_matrix(16, 0), std::invalid_argument);
}

TEST_CASE("first difference operator") {
  Eigen::MatrixXd l = first_difference_l(3);
  Eigen::MatrixXd expect(2, 3);
  expect << 1.0, -1.0, 0.0, 0.0, 1.0, -1.0;
  CHECK((l - expect).norm() == 0.0);
  CHECK((first_difference_l(8) * Eigen::VectorXd::Constant(8, 3.7)).norm() == 0.0);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(first_difference_l(20));
  CHECK(svd.singularValues()(18) > 1e-8);  // rank n-1

  CHECK_THROWS_AS(first_difference_l(1), std::invalid_argument);
}

TEST_CASE("discrete Laplacian stencil") {
  const int side = 5;
  Eigen::MatrixXd l = laplacian_2d_l(side);
  CHECK(l.rows() == side * side);
  CHECK(l.cols() == side * side);
  CHECK((l - l.transpose()).norm() == 0.0);

  // Constant images are annihilated at interior stencils.
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(side * side);
  Eigen::VectorXd lu = l * ones;
  for (int i = 1; i + 1 < side; ++i)
    for (int j = 1; j + 1 < side; ++j) CHECK(lu(i * side + j) == 0.0);

  // Full rank: the negated matrix is positive definite.
  Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd(-l));
  CHECK(llt.info() == Eigen::Success);

  CHECK(laplacian_2d_l(32).cols() == 1024);
  CHECK_THROWS_AS(laplacian_2d_l(2), std::invalid_argument);
}

TEST_CASE("cosine image stacking and normalization") {
  SUBCASE("single constant term") {
    Eigen::VectorXd x = cosine_image(8, {{1.0, 0.0, 0.0, 0.0}});
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (Eigen::Index i = 0; i < x.size(); ++i)
      CHECK(x(i) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  }
  SUBCASE("any coefficient set is unit norm") {
    Eigen::VectorXd x = cosine_image(6, default_cosine_coeffs());
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("default coefficients are regression-locked") {
    Eigen::VectorXd x = cosine_image(32, default_cosine_coeffs());
    CHECK(x.size() == 1024);
    // Frozen at first build.
    CHECK(x(0) == doctest::Approx(0.002824001358).epsilon(1e-6));
    CHECK(x(1) == doctest::Approx(-0.01386208255).epsilon(1e-6));
    CHECK(x(513) == doctest::Approx(0.007871536061).epsilon(1e-6));
    CHECK(x.sum() == doctest::Approx(-0.09314286099).epsilon(1e-6));
  }
  CHECK_THROWS_AS(cosine_image(8, {}), std::invalid_argument);
}

TEST_CASE("noise injection is exact for sigma zero and reproducible by seed") {
  TestSystem sys = shaw(12);
  Eigen::MatrixXd l = first_difference_l(12);

  ProblemInstance clean = add_noise(sys.a_true, sys.b_true, l, 0.5, 0.0, 9);
  CHECK((clean.A - sys.a_true).norm() == 0.0);
  CHECK((clean.b - sys.b_true).norm() == 0.0);

  ProblemInstance n1 = add_noise(sys.a_true, sys.b_true, l, 0.5, 0.05, 123);
  ProblemInstance n2 = add_noise(sys.a_true, sys.b_true, l, 0.5, 0.05, 123);
  CHECK((n1.A - n2.A).norm() == 0.0);
  CHECK((n1.b - n2.b).norm() == 0.0);
  ProblemInstance n3 = add_noise(sys.a_true, sys.b_true, l, 0.5, 0.05, 124);
  CHECK((n1.A - n3.A).norm() > 0.0);

  CHECK_THROWS_AS(add_noise(sys.a_true, sys.b_true, l, 0.5, -0.1, 0),
                  std::invalid_argument);
}

TEST_CASE("noise stream regression values (portable sampler)") {
  NormalSampler rng(2024);
  // Frozen at first build; any platform must reproduce the stream exactly.
  CHECK(rng.next() == doctest::Approx(0.3819019682).epsilon(1e-9));
  CHECK(rng.next() == doctest::Approx(-1.3233225101).epsilon(1e-9));
  CHECK(rng.next() == doctest::Approx(-0.3970387453).epsilon(1e-9));

  TestSystem sys = shaw(20);
  ProblemInstance p =
      add_noise(sys.a_true, sys.b_true, first_difference_l(20), 0.5, 0.05, 7);
  CHECK(p.A.sum() == doctest::Approx(42.420249667).epsilon(1e-7));
  CHECK(p.b.sum() == doctest::Approx(41.167957408).epsilon(1e-7));
}

TEST_CASE("L-curve sweep: monotone trade-off and corner selection") {
  TestSystem sys = shaw(12);
  ProblemInstance noisy =
      add_noise(sys.a_true, sys.b_true, first_difference_l(12), 1.0, 0.05, 5);
  std::vector<double> grid;
  for (int i = -4; i <= 1; ++i) grid.push_back(std::pow(10.0, i));
  LCurveResult lc = lcurve_rho(noisy.A, noisy.b, noisy.L, grid);
  REQUIRE(lc.curve.size() == grid.size());
  CHECK_FALSE(lc.degenerate);
  CHECK(lc.rho > 0.0);
  for (std::size_t i = 0; i + 1 < lc.curve.size(); ++i) {
    CHECK(std::isfinite(lc.curve[i].residual));
    CHECK(std::isfinite(lc.curve[i].seminorm));
    CHECK(lc.curve[i + 1].residual >= lc.curve[i].residual - 1e-6);
    CHECK(lc.curve[i + 1].seminorm <= lc.curve[i].seminorm + 1e-6);
  }
}

TEST_CASE("L-curve degenerate grids") {
  ProblemInstance p = rtls_test::demo2x2();
  LCurveResult lc = lcurve_rho(p.A, p.b, p.L, {0.5});
  CHECK(lc.degenerate);
  CHECK(lc.rho == 0.5);
  CHECK_THROWS_AS(lcurve_rho(p.A, p.b, p.L, {}), std::invalid_argument);
  CHECK_THROWS_AS(lcurve_rho(p.A, p.b, p.L, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("noise-free shaw with the difference operator satisfies attainment") {
  TestSystem sys = shaw(20);
  ProblemInstance p =
      make_problem(sys.a_true, sys.b_true, first_difference_l(20), 0.5);
  CHECK(check_assumption(p).holds);
}
