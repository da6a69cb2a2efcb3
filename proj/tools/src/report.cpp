#include <algorithm>
#include <cmath>
#include <filesystem>

#include "pseudoreal/builtins.hpp"
#include "pseudoreal/cli/cli.hpp"
#include "pseudoreal/inner.hpp"
#include "pseudoreal/matrix_io.hpp"

namespace pseudoreal::cli {
namespace {

void write_value(const Json& j, std::string& out, int depth);

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

// Arrays of scalars, or of scalar arrays (matrix rows), print on one line.
bool is_compact_array(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& e) {
    if (e.is_primitive()) return true;
    return e.is_array() &&
           std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_primitive(); });
  });
}

void write_value(const Json& j, std::string& out, int depth) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent(out, depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        write_value(it.value(), out, depth + 1);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      indent(out, depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_compact_array(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_value(j[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        indent(out, depth + 1);
        write_value(j[i], out, depth + 1);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      indent(out, depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(std::span<const Complex> v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_json(z));
  return out;
}

const char* reality_name(Reality r) {
  switch (r) {
    case Reality::Real:
      return "real";
    case Reality::ConjugatePaired:
      return "conjugate_paired";
    case Reality::Complex:
      return "complex";
  }
  return "?";
}

Json tolerances_json(const ToleranceConfig& tol) {
  return Json{{"residual", tol.residual_tol},
              {"reality", tol.reality_tol},
              {"pairing", tol.pairing_tol},
              {"metric", tol.metric_tol}};
}

Json metric_reports_json(const std::vector<MetricReport>& reports, bool inline_matrices) {
  Json out = Json::array();
  for (const auto& r : reports) {
    Json entry{{"name", r.provenance.name},
               {"provenance", to_string(r.provenance.kind)},
               {"holds", r.holds},
               {"residual", number(r.residual)}};
    if (inline_matrices) entry["metric"] = matrix_json(r.metric);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string signature_string(const std::vector<Sign>& signs) {
  std::string s;
  for (Sign sign : signs) s += to_char(sign);
  return s;
}

Json gram_json(const GramReport& g, const std::string& metric_name, bool inline_gram) {
  Json out{{"kind", to_string(g.kind)},
           {"metric", metric_name.empty() ? Json(nullptr) : Json(metric_name)},
           {"offdiag_max", number(g.offdiag_max)},
           {"norms", vector_json(g.norms)},
           {"signature", signature_string(g.signature)}};
  if (inline_gram) out["gram"] = matrix_json(g.gram);
  return out;
}

bool any_holds(const std::vector<MetricReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const MetricReport& r) { return r.holds; });
}

}  // namespace

std::string to_text(const Json& doc) {
  std::string out;
  write_value(doc, out, 0);
  out += "\n";
  return out;
}

Json analyze(const AnalyzeRequest& request) {
  const ComplexMatrix& h = request.hamiltonian;
  const std::size_t n = h.size();
  const bool inline_matrices = n <= request.inline_limit;

  std::vector<NamedMetric> candidates;
  for (const auto& c : request.candidates) candidates.push_back({c.name, c.matrix, c.origin});
  ClassifyOptions options;
  options.parity = request.parity;
  options.spectrum = request.spectrum;
  options.states = request.states;
  const ClassificationReport report = classify(h, candidates, request.tol, options);
  const Spectrum& spectrum = report.spectrum;

  std::vector<std::size_t> states;
  if (request.states) {
    states = *request.states;
  } else {
    for (std::size_t i = 0; i < spectrum.size(); ++i) states.push_back(i);
  }

  Json doc = Json::object();

  Json input{{"command", request.command}, {"n", n}};
  if (inline_matrices) input["matrix"] = matrix_json(h);
  Json cands = Json::array();
  for (const auto& c : request.candidates) {
    cands.push_back(Json{{"name", c.name}, {"role", c.role}, {"origin", to_string(c.origin)}});
  }
  input["candidates"] = std::move(cands);
  input["parity"] = request.parity ? Json(request.parity->name) : Json("reversal");
  input["tolerances"] = tolerances_json(request.tol);
  input["parameters"] = request.parameters;
  doc["input"] = std::move(input);

  Json pairs = Json::array();
  for (std::size_t idx : states) {
    const Eigenpair& p = spectrum.pairs[idx];
    Json entry{{"index", idx},
               {"value", complex_json(p.value)},
               {"residual", number(p.residual)},
               {"reality", reality_name(p.reality.kind)}};
    if (p.reality.kind == Reality::ConjugatePaired) entry["partner"] = p.reality.partner;
    if (inline_matrices) entry["vector"] = vector_json(p.vector);
    pairs.push_back(std::move(entry));
  }
  doc["spectrum"] = Json{{"order", spectrum.size()},
                         {"scale", spectrum.scale},
                         {"diagonalizer_condition", number(spectrum.diagonalizer_condition)},
                         {"max_abs_imag", spectrum.max_abs_imag()},
                         {"eigenpairs", std::move(pairs)}};

  Json cls = Json::object();
  const bool real_spectrum =
      spectrum.size() > 0 && std::all_of(states.begin(), states.end(), [&](std::size_t i) {
        return spectrum.pairs[i].reality.kind == Reality::Real;
      });
  cls["summary"] = Json{{"real_spectrum", real_spectrum},
                        {"hermitian", report.hermitian.holds},
                        {"self_adjoint", report.self_adjoint.holds},
                        {"pseudo_real", any_holds(report.pseudo_real)},
                        {"pseudo_adjoint", any_holds(report.pseudo_adjoint)},
                        {"pseudo_hermitian", any_holds(report.pseudo_hermitian)},
                        {"pt_symmetric", report.pt_symmetric && report.pt_symmetric->holds}};
  cls["hermitian"] = Json{{"holds", report.hermitian.holds},
                          {"residual", number(report.hermitian.residual)}};
  cls["self_adjoint"] = Json{{"holds", report.self_adjoint.holds},
                             {"residual", number(report.self_adjoint.residual)}};
  cls["pseudo_real"] = metric_reports_json(report.pseudo_real, inline_matrices);
  cls["pseudo_adjoint"] = metric_reports_json(report.pseudo_adjoint, inline_matrices);
  cls["pseudo_hermitian"] = metric_reports_json(report.pseudo_hermitian, inline_matrices);
  if (report.pt_symmetric) {
    cls["pt_symmetric"] = Json{{"parity", report.pt_symmetric->parity_name},
                               {"holds", report.pt_symmetric->holds},
                               {"residual", number(report.pt_symmetric->residual)}};
  } else {
    cls["pt_symmetric"] = nullptr;
  }
  Json checks = Json::array();
  for (const auto& c : report.reality_checks) {
    checks.push_back(Json{{"eigen_index", c.eigen_index},
                          {"metric", c.metric_name},
                          {"epsilon", complex_json(c.epsilon)},
                          {"colinearity_residual", number(c.colinearity_residual)},
                          {"holds", c.holds}});
  }
  cls["reality_checks"] = std::move(checks);
  doc["classification"] = std::move(cls);

  std::vector<ComplexVector> vectors;
  std::vector<Complex> values;
  for (std::size_t idx : states) {
    vectors.push_back(spectrum.pairs[idx].vector);
    values.push_back(spectrum.pairs[idx].value);
  }
  GramOptions gopt;
  gopt.eigenvalues = values;
  gopt.scale = spectrum.scale;
  gopt.metric_tol = request.tol.metric_tol;
  const bool inline_grams = states.size() <= request.inline_limit;

  Json grams = Json::array();
  if (!vectors.empty()) {
    grams.push_back(gram_json(hermitian_gram(vectors, gopt), "", inline_grams));
    grams.push_back(gram_json(transpose_gram(vectors, gopt), "", inline_grams));
    const ComplexMatrix parity = request.parity ? request.parity->matrix : reversal_parity(n);
    const std::string parity_name = request.parity ? request.parity->name : "reversal";
    grams.push_back(gram_json(pt_gram(vectors, parity, gopt), parity_name, inline_grams));
    for (const auto& r : report.pseudo_hermitian) {
      if (!r.holds) continue;
      grams.push_back(gram_json(eta_gram(vectors, r.metric, gopt), r.provenance.name, inline_grams));
    }
  }
  doc["grams"] = std::move(grams);

  Json warnings = Json::array();
  for (const auto& w : request.warnings) warnings.push_back(w);
  for (const auto& w : report.warnings) warnings.push_back(w);
  doc["warnings"] = std::move(warnings);
  return doc;
}

std::pair<std::string, std::string> split_named_path(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq != std::string::npos && eq > 0) {
    const std::string name = arg.substr(0, eq);
    if (name.find('/') == std::string::npos) return {name, arg.substr(eq + 1)};
  }
  return {std::filesystem::path(arg).stem().string(), arg};
}

std::map<std::string, double> parse_assignments(const std::vector<std::string>& args) {
  std::map<std::string, double> out;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
      throw ParseError("expected key=value, got '" + a + "'");
    }
    const std::string key = a.substr(0, eq);
    const std::string text = a.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw ParseError("'" + text + "' is not a number (parameter " + key + ")");
    }
    if (used != text.size()) {
      throw ParseError("'" + text + "' is not a number (parameter " + key + ")");
    }
    out[key] = value;
  }
  return out;
}

Json run_builtin(const std::string& name, const std::map<std::string, double>& params,
                 const ToleranceConfig& tol, ComplexMatrix* matrix_out) {
  const builtins::Builtin b = builtins::make_builtin(name, params);
  AnalyzeRequest req;
  req.command = "builtin";
  req.hamiltonian = b.matrix;
  for (const auto& c : b.candidates) req.candidates.push_back({c.name, "builtin", c.matrix, c.origin});
  req.parity = b.parity;
  req.tol = tol;
  Json p = Json::object();
  p["builtin"] = name;
  for (const auto& key : b.parameters) p[key] = params.at(key);
  if (name == "H8") {
    const auto ang = builtins::h8_angles(params.at("b"), params.at("c"), params.at("d"));
    p["e"] = ang.e ? Json(*ang.e) : Json(nullptr);
    p["theta"] = ang.theta ? Json(*ang.theta) : Json(nullptr);
    p["phi"] = ang.phi;
    if (!ang.e) req.warnings.push_back("c^2 + d^2 <= b^2: e and theta undefined (broken phase)");
  }
  req.parameters = std::move(p);
  if (matrix_out) *matrix_out = b.matrix;
  return analyze(req);
}

Json run_discretize(const DiscretizeRequest& request, ComplexMatrix* matrix_out) {
  const ComplexMatrix h = build_hamiltonian(request.potential, request.grid);
  if (matrix_out) *matrix_out = h;
  const BoundStates bound = bound_spectrum(h, request.grid, request.states, request.tol);

  AnalyzeRequest req;
  req.command = "discretize";
  req.hamiltonian = h;
  req.tol = request.tol;
  req.spectrum = bound.full;
  req.states = bound.indices;
  const DiscreteOperators ops = build_operators(request.grid);
  if (request.grid.symmetric()) {
    req.candidates.push_back({"parity", "rho", ops.parity, ProvenanceKind::Builtin});
    req.parity = NamedMetric{"parity", ops.parity, ProvenanceKind::Builtin};
  } else {
    req.warnings.push_back("grid is not symmetric; parity candidate not added");
  }
  if (bound.indices.size() < request.states) {
    req.warnings.push_back("only " + std::to_string(bound.indices.size()) +
                           " states passed the boundary-decay filter");
  }

  Json p = Json::object();
  p["family"] = family_name(request.potential.family);
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, potential::Harmonic>) {
          p["alpha"] = fam.alpha;
        } else if constexpr (std::is_same_v<T, potential::GaugedOscillator>) {
          p["alpha"] = fam.alpha;
          p["beta"] = fam.beta;
        } else if constexpr (std::is_same_v<T, potential::GaugedHermitian>) {
          p["alpha"] = fam.alpha;
          p["gamma"] = fam.gamma;
        } else if constexpr (std::is_same_v<T, potential::Morse>) {
          p["C"] = fam.c;
          p["D"] = fam.depth;
        } else {
          p["g"] = fam.g;
          p["k"] = fam.k;
        }
      },
      request.potential.family);
  p["shift"] = request.potential.imaginary_shift;
  p["grid"] = Json{{"x_min", request.grid.x_min},
                   {"x_max", request.grid.x_max},
                   {"n_points", request.grid.n_points},
                   {"mass", request.grid.mass}};
  p["states"] = request.states;
  req.parameters = std::move(p);

  Json doc = analyze(req);
  Json rejected = Json::array();
  for (std::size_t i = 0; i < bound.rejected.size(); ++i) {
    rejected.push_back(Json{{"index", bound.rejected_indices[i]},
                            {"value", complex_json(bound.rejected[i].value)}});
  }
  doc["spectrum"]["rejected_by_decay_filter"] = std::move(rejected);

  if (const auto* g = std::get_if<potential::GaugedOscillator>(&request.potential.family)) {
    std::vector<Complex> gauge;
    for (double x : request.grid.points()) gauge.emplace_back(std::exp(-g->beta * x * x));
    const double residual = gauge_similarity_residual(gauge, h);
    doc["classification"]["gauge_pseudo_adjoint"] =
        Json{{"metric", "exp(-beta x^2)"},
             {"holds", residual <= request.tol.metric_tol},
             {"residual", number(residual)}};
  }
  return doc;
}

}  // namespace pseudoreal::cli
