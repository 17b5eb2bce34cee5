#include <doctest.h>

#include "rtls/kernels.hpp"
#include "rtls/trs.hpp"
#include "test_util.hpp"

using namespace rtls;

TEST_CASE("gram kernels: parallel equals serial bitwise, both match the product") {
  NormalSampler rng(77);
  Eigen::MatrixXd a = rtls_test::random_matrix(rng, 50, 30);
  Eigen::MatrixXd gs = kernels::gram_serial(a);
  Eigen::MatrixXd gp = kernels::gram_parallel(a);
  CHECK((gs - gp).norm() == 0.0);
  CHECK((gs - gs.transpose()).norm() == 0.0);
  Eigen::MatrixXd ref = a.transpose() * a;
  CHECK((gs - ref).lpNorm<Eigen::Infinity>() <=
        1e-13 * ref.lpNorm<Eigen::Infinity>());
}

TEST_CASE("shaw kernel: parallel equals serial bitwise") {
  Eigen::MatrixXd s = kernels::shaw_matrix_serial(64);
  Eigen::MatrixXd p = kernels::shaw_matrix_parallel(64);
  CHECK((s - p).norm() == 0.0);
}

TEST_CASE("batch evaluation: parallel equals serial on every field") {
  TestSystem sys = shaw(16);
  ProblemInstance p =
      add_noise(sys.a_true, sys.b_true, first_difference_l(16), 0.5, 0.05, 2);
  std::vector<double> alphas;
  for (int i = 0; i < 16; ++i) alphas.push_back(1.2 + 3.1 * i);
  std::vector<GEvaluation> es = eval_g_many_serial(p, alphas);
  std::vector<GEvaluation> ep = eval_g_many_parallel(p, alphas);
  REQUIRE(es.size() == ep.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    CHECK(es[i].g_value == ep[i].g_value);
    CHECK(es[i].lambda == ep[i].lambda);
    CHECK(*es[i].g_deriv == *ep[i].g_deriv);
    CHECK((es[i].x - ep[i].x).norm() == 0.0);
  }
}

TEST_CASE("batch evaluation propagates failures out of the parallel region") {
  ProblemInstance p = rtls_test::demo2x2();
  CHECK_THROWS_AS(eval_g_many_parallel(p, {2.0, 0.5, 3.0}), std::invalid_argument);
}
