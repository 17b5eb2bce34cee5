#include "rtls/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtls {

namespace {

constexpr const char* kMagic = "rtls-problem";
constexpr int kVersion = 1;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const char* name, const Eigen::MatrixXd& m) {
  os << name << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << fmt17(m(i, j));
    }
    os << '\n';
  }
}

void write_vector(std::ostream& os, const char* name, const Eigen::VectorXd& v) {
  os << name << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << fmt17(v(i));
  }
  os << '\n';
}

Eigen::MatrixXd read_matrix(std::istream& is, Eigen::Index rows, Eigen::Index cols,
                            const char* what) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(is >> m(i, j)))
        throw std::runtime_error(std::string("problem file: truncated ") + what);
  return m;
}

Eigen::VectorXd read_vector(std::istream& is, Eigen::Index size, const char* what) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i)
    if (!(is >> v(i)))
      throw std::runtime_error(std::string("problem file: truncated ") + what);
  return v;
}

} // namespace

ProblemInstance ProblemFile::to_instance() const {
  return make_problem(A, b, L, rho);
}

void write_problem(std::ostream& os, const ProblemFile& pf) {
  os << kMagic << ' ' << kVersion << '\n';
  os << "m " << pf.A.rows() << '\n';
  os << "n " << pf.A.cols() << '\n';
  os << "k " << pf.L.rows() << '\n';
  os << "rho " << fmt17(pf.rho) << '\n';
  write_matrix(os, "A", pf.A);
  write_vector(os, "b", pf.b);
  write_matrix(os, "L", pf.L);
  if (pf.x_true) write_vector(os, "x_true", *pf.x_true);
  if (pf.b_true) write_vector(os, "b_true", *pf.b_true);
  if (pf.sigma) os << "sigma " << fmt17(*pf.sigma) << '\n';
  if (pf.seed) os << "seed " << *pf.seed << '\n';
  os << "end\n";
}

void write_problem_file(const std::string& path, const ProblemFile& pf) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_problem(os, pf);
  if (!os) throw std::runtime_error("write failed: " + path);
}

ProblemFile read_problem(std::istream& is) {
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != kMagic)
    throw std::runtime_error("problem file: bad header");
  if (version != kVersion)
    throw std::runtime_error("problem file: unsupported version");

  Eigen::Index m = -1, n = -1, k = -1;
  ProblemFile pf;
  bool have_a = false, have_b = false, have_l = false;
  std::string key;
  while (is >> key) {
    if (key == "m") {
      is >> m;
    } else if (key == "n") {
      is >> n;
    } else if (key == "k") {
      is >> k;
    } else if (key == "rho") {
      is >> pf.rho;
    } else if (key == "A") {
      if (m < 0 || n < 0) throw std::runtime_error("problem file: A before dimensions");
      pf.A = read_matrix(is, m, n, "A");
      have_a = true;
    } else if (key == "b") {
      if (m < 0) throw std::runtime_error("problem file: b before dimensions");
      pf.b = read_vector(is, m, "b");
      have_b = true;
    } else if (key == "L") {
      if (k < 0 || n < 0) throw std::runtime_error("problem file: L before dimensions");
      pf.L = read_matrix(is, k, n, "L");
      have_l = true;
    } else if (key == "x_true") {
      if (n < 0) throw std::runtime_error("problem file: x_true before dimensions");
      pf.x_true = read_vector(is, n, "x_true");
    } else if (key == "b_true") {
      if (m < 0) throw std::runtime_error("problem file: b_true before dimensions");
      pf.b_true = read_vector(is, m, "b_true");
    } else if (key == "sigma") {
      double s;
      is >> s;
      pf.sigma = s;
    } else if (key == "seed") {
      std::uint64_t s;
      is >> s;
      pf.seed = s;
    } else if (key == "end") {
      break;
    } else {
      throw std::runtime_error("problem file: unknown section '" + key + "'");
    }
    if (!is) throw std::runtime_error("problem file: parse error near '" + key + "'");
  }
  if (!have_a || !have_b || !have_l)
    throw std::runtime_error("problem file: missing A, b or L section");
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_problem(is);
}

ProblemFile to_problem_file(const GeneratedProblem& gp) {
  ProblemFile pf;
  pf.A = gp.instance.A;
  pf.b = gp.instance.b;
  pf.L = gp.instance.L;
  pf.rho = gp.instance.rho;
  pf.x_true = gp.x_true;
  pf.b_true = gp.b_true;
  pf.sigma = gp.sigma;
  pf.seed = gp.seed;
  return pf;
}

Eigen::MatrixXd read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix")
    throw std::runtime_error("matrix market: bad banner");
  if (field != "real" && field != "integer" && field != "double")
    throw std::runtime_error("matrix market: only real entries supported");
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array")
    throw std::runtime_error("matrix market: unknown format '" + format + "'");
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw std::runtime_error("matrix market: unsupported symmetry '" + symmetry + "'");

  // Skip comments.
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sizes(line);
  Eigen::Index rows = 0, cols = 0;
  long long nnz = 0;
  if (coordinate) {
    if (!(sizes >> rows >> cols >> nnz))
      throw std::runtime_error("matrix market: bad size line");
  } else {
    if (!(sizes >> rows >> cols))
      throw std::runtime_error("matrix market: bad size line");
  }

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  if (coordinate) {
    for (long long t = 0; t < nnz; ++t) {
      Eigen::Index i, j;
      double v;
      if (!(is >> i >> j >> v))
        throw std::runtime_error("matrix market: truncated entries");
      m(i - 1, j - 1) = v;
      if (symmetric && i != j) m(j - 1, i - 1) = v;
    }
  } else {
    // Array format is column-major; symmetric stores the lower triangle.
    if (symmetric) {
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = j; i < rows; ++i) {
          double v;
          if (!(is >> v)) throw std::runtime_error("matrix market: truncated entries");
          m(i, j) = v;
          m(j, i) = v;
        }
    } else {
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
          double v;
          if (!(is >> v)) throw std::runtime_error("matrix market: truncated entries");
          m(i, j) = v;
        }
    }
  }
  return m;
}

Eigen::MatrixXd read_matrix_market_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_matrix_market(is);
}

} // namespace rtls
