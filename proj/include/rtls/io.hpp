#ifndef RTLS_IO_HPP
#define RTLS_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "rtls/generators.hpp"
#include "rtls/instance.hpp"

namespace rtls {

/// Contents of one problem container file: the instance data plus optional
/// provenance metadata.
struct ProblemFile {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd L;
  double rho = 0.0;
  std::optional<Eigen::VectorXd> x_true;
  std::optional<Eigen::VectorXd> b_true;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;

  ProblemInstance to_instance() const;
};

/// Self-describing text container: header line, dimensions (m, n, k), rho,
/// then A, b, L row-major with 17 significant digits, then the optional
/// sections.  Writing the same data twice produces identical bytes.
void write_problem(std::ostream& os, const ProblemFile& pf);
void write_problem_file(const std::string& path, const ProblemFile& pf);
ProblemFile read_problem(std::istream& is);
ProblemFile read_problem_file(const std::string& path);

ProblemFile to_problem_file(const GeneratedProblem& gp);

/// Matrix Market reader (array and coordinate formats, real entries,
/// general or symmetric), dense result.  Usable for A and L.
Eigen::MatrixXd read_matrix_market(std::istream& is);
Eigen::MatrixXd read_matrix_market_file(const std::string& path);

} // namespace rtls

#endif
