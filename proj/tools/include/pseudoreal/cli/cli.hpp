#pragma once

// Command-line front end: analyze, builtin, discretize, sweep.
//
// Every command produces one JSON document. Field names are a public
// contract (see README); floats carry 17 significant digits and non-finite
// values are written as null.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pseudoreal/linalg.hpp"
#include "pseudoreal/metrics.hpp"
#include "pseudoreal/schrodinger.hpp"

namespace pseudoreal::cli {

using Json = nlohmann::ordered_json;

/// Exit codes. Verdicts never change the exit status.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseFailure = 2,
  kDimensionMismatch = 3,
};

/// Pretty JSON with 2-space indent, %.17g floats, null for non-finite.
std::string to_text(const Json& doc);

struct Candidate {
  std::string name;
  /// rho / mu / eta / builtin; informational, all checks run regardless.
  std::string role;
  ComplexMatrix matrix;
  ProvenanceKind origin = ProvenanceKind::UserSupplied;
};

struct AnalyzeRequest {
  std::string command = "analyze";
  ComplexMatrix hamiltonian;
  std::vector<Candidate> candidates;
  std::optional<NamedMetric> parity;
  ToleranceConfig tol;
  /// Echoed under input.parameters.
  Json parameters = Json::object();
  /// Precomputed decomposition and the subset of states to report on.
  std::optional<Spectrum> spectrum;
  std::optional<std::vector<std::size_t>> states;
  std::vector<std::string> warnings;
  /// Matrices and eigenvectors are written only up to this order.
  std::size_t inline_limit = 64;
};

Json analyze(const AnalyzeRequest& request);

/// "name=path" or "path" (name taken from the file stem).
std::pair<std::string, std::string> split_named_path(const std::string& arg);

/// Parses "key=value" assignments; throws ParseError.
std::map<std::string, double> parse_assignments(const std::vector<std::string>& args);

Json run_builtin(const std::string& name, const std::map<std::string, double>& params,
                 const ToleranceConfig& tol, ComplexMatrix* matrix_out = nullptr);

struct DiscretizeRequest {
  PotentialSpec potential;
  GridSpec grid;
  std::size_t states = 5;
  ToleranceConfig tol;
};

Json run_discretize(const DiscretizeRequest& request, ComplexMatrix* matrix_out = nullptr);

struct SweepRequest {
  std::string family;
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::map<std::string, double> fixed;
  ToleranceConfig tol;
};

struct MetricFingerprint {
  bool holds = false;
  double residual = 0.0;
  /// Max entry deviation of the canonical metric from its value at the first
  /// real-phase point, relative to that value's largest entry.
  std::optional<double> drift;
};

struct SweepPoint {
  double value = 0.0;
  double max_abs_imag = 0.0;
  bool spectrum_real = false;
  std::vector<Complex> eigenvalues;
  std::map<std::string, MetricFingerprint> metrics;
};

struct SweepResult {
  std::string family;
  std::string parameter;
  std::map<std::string, double> fixed;
  std::vector<double> values;
  std::vector<SweepPoint> points;
  std::optional<std::pair<double, double>> breaking_point;
  std::vector<std::string> secular_metrics;
  std::vector<std::string> warnings;
};

/// Throws InvalidRange, UnknownBuiltin, MissingParameter.
SweepResult run_sweep(const SweepRequest& request);
Json to_json(const SweepResult& result);
/// Tab-separated plot table: value, max_abs_imag, spectrum_real.
std::string to_table(const SweepResult& result);

/// Full command line (args[0] is the subcommand). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudoreal::cli
