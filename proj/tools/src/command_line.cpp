#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "pseudoreal/cli/cli.hpp"
#include "pseudoreal/matrix_io.hpp"

namespace pseudoreal::cli {
namespace {

struct CommonFlags {
  ToleranceConfig tol;
  std::string json_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--tol-residual", flags.tol.residual_tol, "eigenpair residual tolerance")
      ->capture_default_str();
  cmd->add_option("--tol-reality", flags.tol.reality_tol, "|Im lambda| threshold for real")
      ->capture_default_str();
  cmd->add_option("--tol-pairing", flags.tol.pairing_tol, "conjugate pairing tolerance")
      ->capture_default_str();
  cmd->add_option("--tol-metric", flags.tol.metric_tol, "metric residual tolerance")
      ->capture_default_str();
  cmd->add_option("--json", flags.json_path, "write the report here instead of stdout");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pseudoreal: pseudo-reality, pseudo-adjointness and pseudo-Hermiticity checks"};
  app.require_subcommand(1);

  CommonFlags common;

  auto* analyze_cmd = app.add_subcommand("analyze", "classify a matrix from a file");
  std::string matrix_path;
  std::vector<std::string> rho_args, mu_args, eta_args;
  std::string parity_arg;
  analyze_cmd->add_option("--matrix", matrix_path, "Hamiltonian in interchange format")
      ->required();
  analyze_cmd->add_option("--rho", rho_args, "candidate rho, name=path (repeatable)");
  analyze_cmd->add_option("--mu", mu_args, "candidate mu, name=path (repeatable)");
  analyze_cmd->add_option("--eta", eta_args, "candidate eta, name=path (repeatable)");
  analyze_cmd->add_option("--parity", parity_arg, "parity for the PT check, name=path");
  add_common(analyze_cmd, common);

  auto* builtin_cmd = app.add_subcommand("builtin", "analyze a builtin example");
  std::string builtin_name;
  std::vector<std::string> assignments;
  std::string export_path;
  builtin_cmd->add_option("name", builtin_name, "H5, H6, H7, H8 or M3")->required();
  builtin_cmd->add_option("params", assignments, "parameter assignments key=value");
  builtin_cmd->add_option("--matrix", export_path, "also write the matrix here");
  add_common(builtin_cmd, common);

  auto* disc_cmd = app.add_subcommand("discretize", "finite-difference 1-D Hamiltonian");
  std::string family = "harmonic";
  double alpha = 1.0, beta = 0.0, gamma = 0.0, morse_c = 3.5, morse_d = 4.0, g = 1.0;
  int exponent = 3;
  double shift = 0.0;
  double xmin = std::numeric_limits<double>::quiet_NaN();
  double xmax = 6.0;
  std::size_t points = 1024;
  double mass = std::numeric_limits<double>::quiet_NaN();
  std::size_t nstates = 5;
  disc_cmd->add_option("--family", family)
      ->check(CLI::IsMember(
          {"harmonic", "gauged-oscillator", "gauged-hermitian", "morse", "monomial-pt"}))
      ->capture_default_str();
  disc_cmd->add_option("--alpha", alpha)->capture_default_str();
  disc_cmd->add_option("--beta", beta)->capture_default_str();
  disc_cmd->add_option("--gamma", gamma)->capture_default_str();
  disc_cmd->add_option("--C", morse_c, "Morse C")->capture_default_str();
  disc_cmd->add_option("--D", morse_d, "Morse D")->capture_default_str();
  disc_cmd->add_option("--g", g, "monomial coupling")->capture_default_str();
  disc_cmd->add_option("--k", exponent, "monomial exponent (odd)")->capture_default_str();
  disc_cmd->add_option("--shift", shift, "imaginary shift a in V(x - i a)")
      ->capture_default_str();
  disc_cmd->add_option("--xmin", xmin, "left edge (default -xmax)");
  disc_cmd->add_option("--xmax", xmax)->capture_default_str();
  disc_cmd->add_option("--n", points, "interior grid points")->capture_default_str();
  disc_cmd->add_option("--mass", mass, "default 0.5 for morse, 1 otherwise");
  disc_cmd->add_option("--states", nstates, "bound states to report")->capture_default_str();
  disc_cmd->add_option("--matrix", export_path, "also write the matrix here");
  add_common(disc_cmd, common);

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep of a builtin family");
  SweepRequest sweep;
  std::string table_path;
  sweep_cmd->add_option("family", sweep.family, "H5, H6, H7, H8 or M3")->required();
  sweep_cmd->add_option("--param", sweep.parameter, "swept parameter")->required();
  sweep_cmd->add_option("--from", sweep.start)->required();
  sweep_cmd->add_option("--to", sweep.stop)->required();
  sweep_cmd->add_option("--step", sweep.step)->required();
  sweep_cmd->add_option("fixed", assignments, "fixed parameters key=value");
  sweep_cmd->add_option("--table", table_path, "also write a tab-separated plot table");
  add_common(sweep_cmd, common);

  std::vector<std::string> argv_storage{"pseudoreal"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    common.tol.validate();
    if (*analyze_cmd) {
      AnalyzeRequest req;
      req.hamiltonian = read_matrix_file(matrix_path);
      req.tol = common.tol;
      const auto load = [&](const std::vector<std::string>& list, const char* role) {
        for (const auto& a : list) {
          const auto [name, path] = split_named_path(a);
          req.candidates.push_back({name, role, read_matrix_file(path)});
        }
      };
      load(rho_args, "rho");
      load(mu_args, "mu");
      load(eta_args, "eta");
      for (const auto& c : req.candidates) {
        if (c.matrix.size() != req.hamiltonian.size()) {
          throw DimensionMismatch("candidate '" + c.name + "' has order " +
                                  std::to_string(c.matrix.size()) + ", Hamiltonian has order " +
                                  std::to_string(req.hamiltonian.size()));
        }
      }
      if (!parity_arg.empty()) {
        const auto [name, path] = split_named_path(parity_arg);
        ComplexMatrix p = read_matrix_file(path);
        if (p.size() != req.hamiltonian.size()) {
          throw DimensionMismatch("parity has order " + std::to_string(p.size()));
        }
        req.parity = NamedMetric{name, std::move(p), ProvenanceKind::UserSupplied};
      }
      req.parameters = Json{{"matrix_file", matrix_path}};
      emit(to_text(analyze(req)), common.json_path, out);
    } else if (*builtin_cmd) {
      ComplexMatrix m;
      const Json doc =
          run_builtin(builtin_name, parse_assignments(assignments), common.tol, &m);
      if (!export_path.empty()) write_matrix_file(export_path, m);
      emit(to_text(doc), common.json_path, out);
    } else if (*disc_cmd) {
      DiscretizeRequest req;
      req.tol = common.tol;
      req.states = nstates;
      req.grid.x_max = xmax;
      req.grid.x_min = std::isnan(xmin) ? -xmax : xmin;
      req.grid.n_points = points;
      if (family == "harmonic") {
        req.potential.family = potential::Harmonic{alpha};
      } else if (family == "gauged-oscillator") {
        req.potential.family = potential::GaugedOscillator{alpha, beta};
      } else if (family == "gauged-hermitian") {
        req.potential.family = potential::GaugedHermitian{alpha, gamma};
      } else if (family == "morse") {
        req.potential.family = potential::Morse{morse_c, morse_d};
      } else {
        req.potential.family = potential::MonomialPT{g, exponent};
      }
      req.grid.mass = std::isnan(mass) ? (family == "morse" ? 0.5 : 1.0) : mass;
      req.potential.imaginary_shift = shift;
      ComplexMatrix m;
      const Json doc = run_discretize(req, &m);
      if (!export_path.empty()) write_matrix_file(export_path, m);
      emit(to_text(doc), common.json_path, out);
    } else if (*sweep_cmd) {
      sweep.fixed = parse_assignments(assignments);
      sweep.tol = common.tol;
      const SweepResult result = run_sweep(sweep);
      if (!table_path.empty()) emit(to_table(result), table_path, out);
      emit(to_text(to_json(result)), common.json_path, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace pseudoreal::cli
