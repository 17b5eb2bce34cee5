// Compares the serial reference kernels against their OpenMP versions.
#include <chrono>
#include <cstdio>
#include <vector>

#include "rtls/generators.hpp"
#include "rtls/kernels.hpp"
#include "rtls/trs.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

void row(const char* name, int n, double serial_ms, double parallel_ms) {
  std::printf("%-12s n=%5d   serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              name, n, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel kernels run serially.\n");
#endif

  for (int n : {256, 512, 1024}) {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd g;
    const double ts = time_ms([&] { g = rtls::kernels::gram_serial(a); });
    const double tp = time_ms([&] { g = rtls::kernels::gram_parallel(a); });
    row("gram", n, ts, tp);
  }

  for (int n : {1000, 2000}) {
    Eigen::MatrixXd a;
    const double ts = time_ms([&] { a = rtls::kernels::shaw_matrix_serial(n); });
    const double tp = time_ms([&] { a = rtls::kernels::shaw_matrix_parallel(n); });
    row("shaw", n, ts, tp);
  }

  {
    const int n = 60;
    rtls::TestSystem sys = rtls::shaw(n);
    rtls::ProblemInstance p = rtls::add_noise(
        sys.a_true, sys.b_true, rtls::first_difference_l(n), 0.5, 0.05, 1);
    std::vector<double> alphas;
    for (int i = 0; i < 64; ++i) alphas.push_back(1.5 + i * 0.5);
    std::vector<rtls::GEvaluation> evals;
    const double ts = time_ms([&] { evals = rtls::eval_g_many_serial(p, alphas); }, 2);
    const double tp = time_ms([&] { evals = rtls::eval_g_many_parallel(p, alphas); }, 2);
    row("g-sweep", n, ts, tp);
  }
  return 0;
}
