#pragma once

#include "qes/core.hpp"
#include "qes/polynomial.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qes::cli {

using Json = nlohmann::ordered_json;

enum class Subcommand { Spectrum, Secular, CriticalD, Sturmian, Wavefunction, Perturb, Verify, Table1, Sweep };
enum class OutputFormat { Json, Csv, Pretty };

/// Rational-valued options are kept as text and parsed exactly, so "2.5"
/// means 5/2 rather than its binary approximation.
struct RunConfig {
  Subcommand subcommand = Subcommand::Spectrum;
  int N = 1;
  std::optional<std::string> a, c, d, lambda, f;
  int level = 0;
  int order = 4;
  std::optional<double> tol;
  std::optional<double> x_max;
  std::optional<int> steps;
  std::optional<OutputFormat> format; // default depends on the subcommand
  std::uint64_t seed = 1;

  std::string mode;                   // verify: shift | sl2 | ode
  std::string delta = "1";            // verify shift
  int samples = 0;                    // verify shift: random samples instead of one point
  std::optional<int> degree;          // verify sl2: monomial cutoff D

  std::string over;                   // sweep: d | c | lambda
  std::optional<std::string> from, to, step;
  int threads = 0;                    // sweep workers; 0 = hardware concurrency
};

/// Invalid or conflicting options; maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Resolves (a, c), (d) or (lambda) into model parameters; lambda and d
/// imply a = 0.
ModelParams resolve_params(const RunConfig &config);

/// Executes one configured command, writing the report to `out` and
/// diagnostics to `err`. Returns 0 on success, 1 when a check fails, 2 on a
/// usage or configuration error.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses command-line arguments (argv[0] excluded) and calls run().
int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

Json rational_json(const Rational &q);
Rational rational_from_json(const Json &j);
Json complex_json(const Complex &z);
/// {"variables": [var], "terms": [[[k], num, den], ...]}
Json polynomial_json(const RationalPolynomial &p, const std::string &var);
Json polynomial_json(const BivariatePolynomial &p);

} // namespace qes::cli
