// Command-line front end: single solves, bound comparisons, benchmark
// sweeps, g(alpha)-curve data emission and instance generation.
//
// Exit codes: 0 success, 2 attainment assumption failure, 3 iteration cap
// hit, 1 any other error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtls/io.hpp"
#include "rtls/solvers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitCapHit = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct GenSpec {
  std::string kind;        // "shaw" or "blur"
  std::vector<int> sizes;  // n list
  int band = 3;
};

GenSpec parse_gen(const std::string& s) {
  GenSpec spec;
  std::stringstream ss(s);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw CLI::ValidationError("--gen", "empty generator spec");
  spec.kind = parts[0];
  if (spec.kind != "shaw" && spec.kind != "blur")
    throw CLI::ValidationError("--gen", "unknown generator '" + spec.kind + "'");
  if (parts.size() < 2)
    throw CLI::ValidationError("--gen", "generator needs a size, e.g. shaw:20");
  std::stringstream ns(parts[1]);
  std::string item;
  while (std::getline(ns, item, ',')) spec.sizes.push_back(std::stoi(item));
  if (spec.sizes.empty())
    throw CLI::ValidationError("--gen", "generator needs at least one size");
  if (parts.size() > 2) spec.band = std::stoi(parts[2]);
  if (parts.size() > 3) throw CLI::ValidationError("--gen", "too many fields");
  return spec;
}

rtls::GeneratedProblem generate(const GenSpec& spec, int n, double sigma,
                                std::uint64_t seed, double rho) {
  rtls::GeneratedProblem gp;
  gp.sigma = sigma;
  gp.seed = seed;
  if (spec.kind == "shaw") {
    rtls::TestSystem sys = rtls::shaw(n);
    gp.x_true = sys.x_true;
    gp.b_true = sys.b_true;
    gp.instance = rtls::add_noise(sys.a_true, sys.b_true,
                                  rtls::first_difference_l(n), rho, sigma, seed);
  } else {
    const int side = static_cast<int>(std::lround(std::sqrt(double(n))));
    Eigen::MatrixXd a_true = rtls::blur_matrix(n, spec.band);
    gp.x_true = rtls::cosine_image(side, rtls::default_cosine_coeffs());
    gp.b_true = a_true * gp.x_true;
    gp.instance = rtls::add_noise(a_true, gp.b_true, rtls::laplacian_2d_l(side),
                                  rho, sigma, seed);
  }
  return gp;
}

struct CommonInput {
  std::string input_path;
  std::string gen_spec;
  double sigma = 0.0;
  std::vector<std::uint64_t> seeds;
  double rho = 0.5;
  bool rho_given = false;
  std::vector<double> rho_lcurve;
};

void add_input_options(CLI::App* cmd, CommonInput& in) {
  auto* input = cmd->add_option("--input", in.input_path, "Problem container file");
  auto* gen = cmd->add_option("--gen", in.gen_spec,
                              "Generator spec: shaw:N or blur:N:BAND");
  input->excludes(gen);
  gen->excludes(input);
  cmd->add_option("--sigma", in.sigma, "Noise level for generated instances")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seeds", in.seeds,
                  "Seed list for generated instances (default: 0)")
      ->delimiter(',');
  auto* rho_opt =
      cmd->add_option("--rho", in.rho, "Penalty parameter")->capture_default_str();
  auto* lcurve = cmd->add_option("--rho-lcurve", in.rho_lcurve,
                                 "Pick rho by the L-curve over this grid")
                     ->delimiter(',');
  rho_opt->excludes(lcurve);
  lcurve->excludes(rho_opt);
  cmd->callback([&in, rho_opt] { in.rho_given = rho_opt->count() > 0; });
}

/// Loads or generates the single instance a subcommand operates on.
rtls::ProblemInstance load_instance(const CommonInput& in) {
  if (!in.input_path.empty()) {
    rtls::ProblemFile pf = rtls::read_problem_file(in.input_path);
    if (in.rho_given) pf.rho = in.rho;
    if (!in.rho_lcurve.empty()) {
      rtls::LCurveResult lc = rtls::lcurve_rho(pf.A, pf.b, pf.L, in.rho_lcurve);
      if (lc.degenerate)
        std::cerr << "warning: L-curve grid too short for a curvature estimate; "
                     "using the middle point\n";
      pf.rho = lc.rho;
    }
    return pf.to_instance();
  }
  if (in.gen_spec.empty())
    throw CLI::ValidationError("input", "exactly one of --input / --gen is required");
  GenSpec spec = parse_gen(in.gen_spec);
  if (spec.sizes.size() != 1)
    throw CLI::ValidationError("--gen", "this command takes a single size");
  const std::uint64_t seed = in.seeds.empty() ? 0 : in.seeds.front();
  if (!in.rho_lcurve.empty()) {
    rtls::GeneratedProblem probe = generate(spec, spec.sizes[0], in.sigma, seed, 1.0);
    rtls::LCurveResult lc = rtls::lcurve_rho(probe.instance.A, probe.instance.b,
                                             probe.instance.L, in.rho_lcurve);
    if (lc.degenerate)
      std::cerr << "warning: L-curve grid too short for a curvature estimate; "
                   "using the middle point\n";
    return rtls::make_problem(probe.instance.A, probe.instance.b,
                              probe.instance.L, lc.rho);
  }
  return generate(spec, spec.sizes[0], in.sigma, seed, in.rho).instance;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

/// Stream sink: --out FILE or stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_ = open_out(path);
      out_ = &file_;
    } else {
      out_ = &std::cout;
    }
  }
  std::ostream& get() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

json report_to_json(const rtls::SolveReport& rep) {
  json j;
  j["algorithm"] = rep.algorithm == rtls::Algorithm::btd      ? "btd"
                   : rep.algorithm == rtls::Algorithm::trtlsg ? "trtlsg"
                                                              : "grid";
  j["alpha_star"] = rep.alpha_star;
  j["objective"] = rep.objective;
  j["iterations"] = rep.iterations;
  j["certificate"] = rep.certificate;
  if (rep.certificate) j["certified_gap"] = rep.certified_gap;
  j["wall_time_s"] = rep.wall_time_s;
  j["cap_hit"] = rep.cap_hit;
  j["alpha_min"] = rep.bounds.alpha_min;
  j["alpha_max"] = rep.bounds.alpha_max;
  j["x_star"] =
      std::vector<double>(rep.x_star.data(), rep.x_star.data() + rep.x_star.size());
  return j;
}

// ---------------------------------------------------------------- solve --

struct SolveArgs {
  CommonInput in;
  std::string algo = "btd";
  rtls::SolverConfig cfg;
  bool original_bounds = false;
  std::string stop = "width";
  int grid_points = 2000;
  std::string out_path;
  std::string x_out;
  std::string format = "human";
};

int run_solve(const SolveArgs& a) {
  rtls::ProblemInstance p = load_instance(a.in);
  rtls::SolverConfig cfg = a.cfg;
  cfg.use_improved_bounds = !a.original_bounds;
  cfg.stopping_mode = a.stop == "gap" ? rtls::StoppingMode::certified_gap
                                      : rtls::StoppingMode::interval_width;

  rtls::SolveReport rep;
  if (a.algo == "btd") {
    rep = rtls::btd_solve(p, cfg);
  } else if (a.algo == "trtlsg") {
    std::optional<double> lb_star;
    if (cfg.stopping_mode == rtls::StoppingMode::certified_gap) {
      rtls::SolverConfig pre = cfg;
      pre.stopping_mode = rtls::StoppingMode::interval_width;
      const rtls::SolveReport ref = rtls::btd_solve(p, pre);
      lb_star = ref.objective - ref.certified_gap;
    }
    rep = rtls::trtlsg_solve(p, cfg, lb_star);
  } else {
    rep = rtls::grid_oracle(p, a.grid_points, std::nullopt, cfg);
  }

  OutStream out(a.out_path);
  if (a.format == "json") {
    out.get() << report_to_json(rep).dump(2) << '\n';
  } else if (a.format == "csv") {
    out.get() << "algorithm,alpha_star,objective,iterations,certificate,"
                 "certified_gap,wall_time_s,cap_hit\n";
    out.get() << a.algo << ',' << fmt(rep.alpha_star) << ',' << fmt(rep.objective)
              << ',' << rep.iterations << ',' << (rep.certificate ? 1 : 0) << ','
              << (rep.certificate ? fmt(rep.certified_gap) : "na") << ','
              << fmt(rep.wall_time_s) << ',' << (rep.cap_hit ? 1 : 0) << '\n';
  } else {
    std::ostream& os = out.get();
    os << "algorithm      " << a.algo << '\n';
    os << "alpha*         " << fmt(rep.alpha_star) << '\n';
    os << "objective      " << fmt(rep.objective) << '\n';
    os << "iterations     " << rep.iterations << " (g evaluations)\n";
    if (rep.certificate)
      os << "certified gap  " << fmt(rep.certified_gap) << '\n';
    else
      os << "certified gap  none (no global certificate for this run)\n";
    os << "interval       [" << fmt(rep.bounds.alpha_min) << ", "
       << fmt(rep.bounds.alpha_max) << "]\n";
    os << "wall time      " << fmt(rep.wall_time_s) << " s\n";
    const Eigen::Index show = std::min<Eigen::Index>(rep.x_star.size(), 8);
    os << "x*             [";
    for (Eigen::Index i = 0; i < show; ++i) {
      if (i) os << ", ";
      os << fmt(rep.x_star(i));
    }
    if (show < rep.x_star.size()) os << ", ...";
    os << "]  (norm " << fmt(rep.x_star.norm()) << ")\n";
  }
  if (!rep.certificate && a.algo == "trtlsg")
    std::cerr << "warning: bisection converged to a stationary point without a "
                 "global certificate\n";

  if (!a.x_out.empty()) {
    std::ofstream xs = open_out(a.x_out);
    for (Eigen::Index i = 0; i < rep.x_star.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", rep.x_star(i));
      xs << buf << '\n';
    }
  }
  return rep.cap_hit ? kExitCapHit : kExitOk;
}

// --------------------------------------------------------------- bounds --

struct BoundsArgs {
  CommonInput in;
  double epsilon = 1e-6;
  std::string out_path;
  std::string format = "csv";
};

int run_bounds(const BoundsArgs& a) {
  struct Row {
    std::string label;
    int n = 0;
    bool ok = false;
    double t_lower = 0, alpha_min = 0, t_beck = 0, beck = 0, t_new = 0, alpha_new = 0;
  };
  std::vector<Row> rows;

  const auto add_instance = [&](const std::string& label,
                                const rtls::ProblemInstance& p) {
    Row row;
    row.label = label;
    row.n = static_cast<int>(p.n());
    rtls::AssumptionCheck ac = rtls::check_assumption(p);
    if (ac.holds) {
      using Clock = std::chrono::steady_clock;
      const auto t0 = Clock::now();
      row.alpha_min = rtls::alpha_lower(p, a.epsilon, ac).alpha_min;
      const auto t1 = Clock::now();
      row.beck = rtls::alpha_upper_beck(p, ac);
      const auto t2 = Clock::now();
      row.alpha_new = rtls::alpha_upper_new(p, ac);
      const auto t3 = Clock::now();
      row.t_lower = std::chrono::duration<double>(t1 - t0).count();
      row.t_beck = std::chrono::duration<double>(t2 - t1).count();
      row.t_new = std::chrono::duration<double>(t3 - t2).count();
      row.ok = true;
    } else {
      std::cerr << "warning: " << label
                << ": attainment assumption fails; row flagged\n";
    }
    rows.push_back(row);
  };

  if (!a.in.input_path.empty()) {
    add_instance(a.in.input_path, load_instance(a.in));
  } else if (!a.in.gen_spec.empty()) {
    GenSpec spec = parse_gen(a.in.gen_spec);
    const std::uint64_t seed = a.in.seeds.empty() ? 0 : a.in.seeds.front();
    for (int n : spec.sizes) {
      rtls::GeneratedProblem gp = generate(spec, n, a.in.sigma, seed, a.in.rho);
      add_instance(spec.kind + ":" + std::to_string(n), gp.instance);
    }
  }
  // An empty instance list still emits the header.

  OutStream out(a.out_path);
  if (a.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json j{{"label", r.label}, {"n", r.n}, {"assumption_holds", r.ok}};
      if (r.ok) {
        j["time_lower_s"] = r.t_lower;
        j["alpha_min"] = r.alpha_min;
        j["time_beck_s"] = r.t_beck;
        j["alpha_max_beck"] = r.beck;
        j["time_new_s"] = r.t_new;
        j["alpha_max_new"] = r.alpha_new;
      }
      arr.push_back(j);
    }
    out.get() << arr.dump(2) << '\n';
  } else {
    out.get() << "label,n,assumption,time_lower_s,alpha_min,time_beck_s,"
                 "alpha_max_beck,time_new_s,alpha_max_new\n";
    for (const Row& r : rows) {
      out.get() << r.label << ',' << r.n << ',' << (r.ok ? 1 : 0) << ',';
      if (r.ok)
        out.get() << fmt(r.t_lower) << ',' << fmt(r.alpha_min) << ',' << fmt(r.t_beck)
                  << ',' << fmt(r.beck) << ',' << fmt(r.t_new) << ','
                  << fmt(r.alpha_new) << '\n';
      else
        out.get() << "na,na,na,na,na,na\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench --

struct BenchArgs {
  CommonInput in;
  std::vector<double> sigmas;
  int reps = 10;
  double epsilon = 1e-6;
  bool no_timing = false;
  std::string out_path;
  std::string format = "csv";
};

struct BenchCell {
  bool failed = false;
  long btd_iters = 0;
  double btd_time = 0.0;
  long tr_iters = 0;
  double tr_time = 0.0;
};

int run_bench(const BenchArgs& a) {
  if (a.in.gen_spec.empty())
    throw CLI::ValidationError("--gen", "bench requires a generator spec");
  GenSpec spec = parse_gen(a.in.gen_spec);
  std::vector<double> sigmas = a.sigmas;
  if (sigmas.empty()) sigmas.push_back(a.in.sigma);
  std::vector<std::uint64_t> seeds = a.in.seeds;
  if (seeds.empty())
    for (int s = 0; s < a.reps; ++s) seeds.push_back(static_cast<std::uint64_t>(s));

  struct Setting {
    int n;
    double sigma;
  };
  std::vector<Setting> settings;
  for (int n : spec.sizes)
    for (double s : sigmas) settings.push_back({n, s});

  const long cells = static_cast<long>(settings.size() * seeds.size());
  std::vector<BenchCell> results(static_cast<std::size_t>(cells));

  int bench_threads = 1;
  if (const char* env = std::getenv("RTLS_BENCH_THREADS"))
    bench_threads = std::max(1, std::atoi(env));

  const auto run_cell = [&](long c) {
    const Setting& st = settings[static_cast<std::size_t>(c) / seeds.size()];
    const std::uint64_t seed = seeds[static_cast<std::size_t>(c) % seeds.size()];
    BenchCell& cell = results[static_cast<std::size_t>(c)];
    try {
      rtls::GeneratedProblem gp = generate(spec, st.n, st.sigma, seed, a.in.rho);
      rtls::SolverConfig cfg;
      cfg.epsilon = a.epsilon;
      const rtls::SolveReport btd = rtls::btd_solve(gp.instance, cfg);
      cell.btd_iters = btd.iterations;
      cell.btd_time = btd.wall_time_s;
      // Fairness protocol: the branch-and-bound lower bound feeds the
      // bisection stopping rule; each timing covers its own solver only.
      rtls::SolverConfig tcfg = cfg;
      tcfg.stopping_mode = rtls::StoppingMode::certified_gap;
      const double lb_star = btd.objective - btd.certified_gap;
      const rtls::SolveReport tr = rtls::trtlsg_solve(gp.instance, tcfg, lb_star);
      cell.tr_iters = tr.iterations;
      cell.tr_time = tr.wall_time_s;
    } catch (const std::exception& e) {
      cell.failed = true;
#pragma omp critical
      std::cerr << "warning: bench cell n=" << st.n << " sigma=" << st.sigma
                << " seed=" << seed << " failed: " << e.what() << '\n';
    }
  };

#ifdef _OPENMP
  if (bench_threads > 1) {
#pragma omp parallel for num_threads(bench_threads) schedule(dynamic)
    for (long c = 0; c < cells; ++c) run_cell(c);
  } else {
    for (long c = 0; c < cells; ++c) run_cell(c);
  }
#else
  for (long c = 0; c < cells; ++c) run_cell(c);
#endif

  OutStream out(a.out_path);
  json arr = json::array();
  if (a.format == "csv")
    out.get() << "generator,n,sigma,reps,failures,btd_iter_mean,btd_time_s_mean,"
                 "trtlsg_iter_mean,trtlsg_time_s_mean\n";
  for (std::size_t s = 0; s < settings.size(); ++s) {
    long fail = 0;
    long ok = 0;
    double bi = 0, bt = 0, ti = 0, tt = 0;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      const BenchCell& cell = results[s * seeds.size() + r];
      if (cell.failed) {
        ++fail;
        continue;
      }
      ++ok;
      bi += static_cast<double>(cell.btd_iters);
      bt += cell.btd_time;
      ti += static_cast<double>(cell.tr_iters);
      tt += cell.tr_time;
    }
    if (ok > 0) {
      bi /= static_cast<double>(ok);
      bt /= static_cast<double>(ok);
      ti /= static_cast<double>(ok);
      tt /= static_cast<double>(ok);
    }
    const std::string bt_s = a.no_timing ? "na" : fmt(bt);
    const std::string tt_s = a.no_timing ? "na" : fmt(tt);
    if (a.format == "csv") {
      out.get() << spec.kind << ',' << settings[s].n << ',' << fmt(settings[s].sigma)
                << ',' << seeds.size() << ',' << fail << ',' << fmt(bi) << ','
                << bt_s << ',' << fmt(ti) << ',' << tt_s << '\n';
    } else {
      json j{{"generator", spec.kind}, {"n", settings[s].n},
             {"sigma", settings[s].sigma}, {"reps", seeds.size()},
             {"failures", fail},          {"btd_iter_mean", bi},
             {"trtlsg_iter_mean", ti}};
      if (!a.no_timing) {
        j["btd_time_s_mean"] = bt;
        j["trtlsg_time_s_mean"] = tt;
      }
      arr.push_back(j);
    }
  }
  if (a.format == "json") out.get() << arr.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- curve --

struct CurveArgs {
  CommonInput in;
  std::string alpha_range;
  int points = 400;
  double epsilon = 1e-6;
  std::string trace_out;
  std::string out_path;
};

int run_curve(const CurveArgs& a) {
  rtls::ProblemInstance p = load_instance(a.in);
  rtls::SolverConfig cfg;
  cfg.epsilon = a.epsilon;

  double lo = 0, hi = 0;
  if (!a.alpha_range.empty()) {
    const auto colon = a.alpha_range.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--alpha-range", "expected LO:HI");
    lo = std::stod(a.alpha_range.substr(0, colon));
    hi = std::stod(a.alpha_range.substr(colon + 1));
  } else {
    rtls::BoundReport bounds = rtls::compute_bounds(p, cfg.epsilon);
    if (!bounds.assumption_holds)
      throw rtls::AssumptionError(
          "curve: attainment assumption fails and no --alpha-range given");
    lo = bounds.alpha_min;
    hi = bounds.alpha_max;
  }
  if (!(lo >= 1.0) || !(hi >= lo))
    throw CLI::ValidationError("--alpha-range", "need 1 <= LO <= HI");

  std::vector<double> alphas;
  if (hi == lo) {
    alphas.push_back(lo);
  } else {
    const int pts = std::max(2, a.points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < pts; ++i)
      alphas.push_back(std::exp(llo + (lhi - llo) * i / (pts - 1)));
    alphas.front() = lo;
    alphas.back() = hi;
  }

  const std::vector<rtls::GEvaluation> evals = rtls::eval_g_many(p, alphas, cfg.trs);

  OutStream out(a.out_path);
  out.get() << "alpha,g,g_deriv,lambda,hard_case\n";
  for (const rtls::GEvaluation& ev : evals) {
    out.get() << fmt(ev.alpha) << ',' << fmt(ev.g_value) << ','
              << (ev.g_deriv ? fmt(*ev.g_deriv) : "na") << ',' << fmt(ev.lambda)
              << ',' << (ev.hard_case ? 1 : 0) << '\n';
  }

  if (!a.trace_out.empty()) {
    const rtls::SolveReport rep = rtls::btd_solve(p, cfg);
    std::ofstream ts = open_out(a.trace_out);
    ts << "event,iteration,alpha_lo,alpha_hi,alpha,value,ub\n";
    for (const rtls::TraceEvent& ev : rep.trace) {
      const char* kind = "";
      switch (ev.kind) {
        case rtls::TraceEvent::Kind::evaluate: kind = "evaluate"; break;
        case rtls::TraceEvent::Kind::incumbent: kind = "incumbent"; break;
        case rtls::TraceEvent::Kind::node_pushed: kind = "node_pushed"; break;
        case rtls::TraceEvent::Kind::node_pruned: kind = "node_pruned"; break;
        case rtls::TraceEvent::Kind::node_popped: kind = "node_popped"; break;
        case rtls::TraceEvent::Kind::exhausted: kind = "exhausted"; break;
      }
      ts << kind << ',' << ev.iteration << ',' << fmt(ev.alpha_lo) << ','
         << fmt(ev.alpha_hi) << ',' << fmt(ev.alpha) << ',' << fmt(ev.value) << ','
         << fmt(ev.ub) << '\n';
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ gen --

struct GenArgs {
  CommonInput in;
  std::string out_path;
};

int run_gen(const GenArgs& a) {
  if (a.in.gen_spec.empty())
    throw CLI::ValidationError("--gen", "gen requires a generator spec");
  GenSpec spec = parse_gen(a.in.gen_spec);
  if (spec.sizes.size() != 1)
    throw CLI::ValidationError("--gen", "gen takes a single size");
  const std::uint64_t seed = a.in.seeds.empty() ? 0 : a.in.seeds.front();
  rtls::GeneratedProblem gp =
      generate(spec, spec.sizes[0], a.in.sigma, seed, a.in.rho);
  rtls::write_problem_file(a.out_path, rtls::to_problem_file(gp));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Global solver for Tikhonov-regularized total least squares via its\n"
      "one-dimensional parametric reformulation (branch-and-bound and\n"
      "bisection), with test-problem generators and bound reports."};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
  add_input_options(solve, sa.in);
  solve->add_option("--algo", sa.algo, "btd | trtlsg | grid")
      ->check(CLI::IsMember({"btd", "trtlsg", "grid"}))
      ->capture_default_str();
  solve->add_option("--eps", sa.cfg.epsilon, "Global tolerance")->capture_default_str();
  solve->add_option("--eps1", sa.cfg.epsilon1,
                    "Bisection alpha_min offset for --original-bounds")
      ->capture_default_str();
  solve->add_option("--eps2", sa.cfg.epsilon2, "Bisection interval-width tolerance")
      ->capture_default_str();
  solve->add_option("--max-iter", sa.cfg.max_iterations, "Evaluation cap")
      ->capture_default_str();
  solve->add_flag("--original-bounds", sa.original_bounds,
                  "Bisection uses the conservative interval (1+eps1, older upper bound)");
  solve->add_option("--stop", sa.stop,
                    "Bisection stopping rule: width | gap (gap runs btd first)")
      ->check(CLI::IsMember({"width", "gap"}))
      ->capture_default_str();
  solve->add_option("--grid-points", sa.grid_points, "Grid size for --algo grid")
      ->capture_default_str();
  solve->add_option("--out", sa.out_path, "Write the report here instead of stdout");
  solve->add_option("--x-out", sa.x_out, "Write x* (one entry per line)");
  solve->add_option("--format", sa.format, "human | csv | json")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Interval bound values and times, one CSV row per instance");
  add_input_options(bounds, ba.in);
  bounds->add_option("--eps", ba.epsilon, "Tolerance used by the lower bound")
      ->capture_default_str();
  bounds->add_option("--out", ba.out_path, "Output path (default stdout)");
  bounds->add_option("--format", ba.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  BenchArgs na;
  CLI::App* bench = app.add_subcommand(
      "bench",
      "Benchmark sweep over generated instances; both algorithms per cell.\n"
      "RTLS_BENCH_THREADS controls how many cells run concurrently.");
  add_input_options(bench, na.in);
  bench->add_option("--sigma-list", na.sigmas, "Noise levels (overrides --sigma)")
      ->delimiter(',');
  bench->add_option("--reps", na.reps,
                    "Repetitions per setting when --seeds is not given (seeds 0..K-1)")
      ->capture_default_str();
  bench->add_option("--eps", na.epsilon, "Solver tolerance")->capture_default_str();
  bench->add_flag("--no-timing", na.no_timing,
                  "Emit 'na' in timing columns (reproducible output)");
  bench->add_option("--out", na.out_path, "Output path (default stdout)");
  bench->add_option("--format", na.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CurveArgs ca;
  CLI::App* curve = app.add_subcommand(
      "curve", "Emit (alpha, g, g', lambda, hard_case) over a log grid");
  add_input_options(curve, ca.in);
  curve->add_option("--alpha-range", ca.alpha_range,
                    "LO:HI (default: computed interval bounds)");
  curve->add_option("--points", ca.points, "Grid size")->capture_default_str();
  curve->add_option("--eps", ca.epsilon, "Tolerance for the default range")
      ->capture_default_str();
  curve->add_option("--trace-out", ca.trace_out,
                    "Also run btd and write its node trace CSV here");
  curve->add_option("--out", ca.out_path, "Output path (default stdout)");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  add_input_options(gen, ga.in);
  gen->add_option("--out", ga.out_path, "Output problem file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(sa);
    if (bounds->parsed()) return run_bounds(ba);
    if (bench->parsed()) return run_bench(na);
    if (curve->parsed()) return run_curve(ca);
    if (gen->parsed()) return run_gen(ga);
  } catch (const rtls::AssumptionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssumption;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
