#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pseudoreal/builtins.hpp"
#include "pseudoreal/cli/cli.hpp"
#include "pseudoreal/matrix_io.hpp"

namespace pseudoreal::cli {
namespace {

constexpr std::size_t kMaxSweepPoints = 1'000'000;
constexpr double kSecularDrift = 1e-8;

std::vector<double> sweep_values(const SweepRequest& req) {
  if (!std::isfinite(req.start) || !std::isfinite(req.stop) || !std::isfinite(req.step)) {
    throw InvalidRange("sweep range and step must be finite");
  }
  if (!(req.step > 0.0)) throw InvalidRange("sweep step must be positive");
  if (req.stop < req.start) throw InvalidRange("sweep range is empty (stop < start)");
  const double span = (req.stop - req.start) / req.step;
  if (span + 1.0 > static_cast<double>(kMaxSweepPoints)) {
    throw InvalidRange("sweep would evaluate more than 1e6 points");
  }
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = req.start + static_cast<double>(i) * req.step;
  }
  return values;
}

struct Tracked {
  std::string key;
  ComplexMatrix canonical;
};

}  // namespace

SweepResult run_sweep(const SweepRequest& req) {
  req.tol.validate();
  const auto& names = builtins::builtin_parameters(req.family);
  if (std::find(names.begin(), names.end(), req.parameter) == names.end()) {
    throw MissingParameter("builtin " + req.family + " has no parameter '" + req.parameter + "'");
  }
  if (req.fixed.count(req.parameter)) {
    throw InvalidRange("parameter '" + req.parameter + "' is both swept and fixed");
  }

  SweepResult result;
  result.family = req.family;
  result.parameter = req.parameter;
  result.fixed = req.fixed;
  result.values = sweep_values(req);

  // Canonical metrics per point, kept for the drift pass.
  std::vector<std::vector<Tracked>> canon(result.values.size());

  for (std::size_t i = 0; i < result.values.size(); ++i) {
    std::map<std::string, double> params = req.fixed;
    params[req.parameter] = result.values[i];
    const builtins::Builtin b = builtins::make_builtin(req.family, params);

    SweepPoint point;
    point.value = result.values[i];
    Spectrum spectrum;
    try {
      spectrum = eigendecompose(b.matrix, req.tol);
    } catch (const NumericalError& e) {
      result.warnings.push_back("value " + format_number(point.value) + ": " + e.what());
      point.max_abs_imag = std::numeric_limits<double>::quiet_NaN();
      result.points.push_back(std::move(point));
      continue;
    }
    point.eigenvalues = spectrum.values();
    point.max_abs_imag = spectrum.max_abs_imag();
    point.spectrum_real = point.max_abs_imag <= req.tol.reality_tol * spectrum.scale;

    std::vector<NamedMetric> pool = b.candidates;
    pool.push_back({"identity", ComplexMatrix::identity(b.matrix.size()), ProvenanceKind::Builtin});
    auto track = [&](MetricKind kind, const std::string& name, const ComplexMatrix& m) {
      const std::string key = std::string(to_string(kind)) + ":" + name;
      try {
        const MetricReport r = check_metric(kind, b.matrix, m, req.tol);
        point.metrics[key] = {r.holds, r.residual, std::nullopt};
        canon[i].push_back({key, r.metric});
      } catch (const SingularMatrix&) {
        point.metrics[key] = {false, std::numeric_limits<double>::infinity(), std::nullopt};
      }
    };
    for (const auto& c : pool) {
      for (MetricKind kind :
           {MetricKind::PseudoReal, MetricKind::PseudoAdjoint, MetricKind::PseudoHermitian}) {
        track(kind, c.name, c.matrix);
      }
    }
    if (spectrum.diagonalizer_condition <= 1.0 / req.tol.metric_tol) {
      try {
        const ComplexMatrix d = unit_columns(build_diagonalizer(spectrum, req.tol));
        track(MetricKind::PseudoReal, "from_D_rho", rho_from_diagonalizer(d));
        track(MetricKind::PseudoAdjoint, "from_D_mu", mu_from_diagonalizer(d));
        track(MetricKind::PseudoHermitian, "from_D_eta_plus", eta_plus_from_diagonalizer(d));
      } catch (const NumericalError&) {
        // Near the exceptional point; diagonalizer metrics are simply absent.
      }
    }
    result.points.push_back(std::move(point));
  }

  // Drift of every canonical metric against the first real-phase point.
  std::map<std::string, ComplexMatrix> reference;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    if (!result.points[i].spectrum_real) continue;
    for (const auto& t : canon[i]) {
      if (!reference.count(t.key)) reference.emplace(t.key, t.canonical);
      const ComplexMatrix& ref = reference.at(t.key);
      const double scale = std::max(max_abs(ref), 1e-300);
      result.points[i].metrics[t.key].drift = max_abs(t.canonical - ref) / scale;
    }
  }

  // Secular: holds with zero drift at every real-phase point.
  std::size_t real_points = 0;
  for (const auto& p : result.points) real_points += p.spectrum_real ? 1 : 0;
  if (real_points > 0) {
    for (const auto& [key, ref] : reference) {
      (void)ref;
      bool secular = true;
      for (const auto& p : result.points) {
        if (!p.spectrum_real) continue;
        const auto it = p.metrics.find(key);
        if (it == p.metrics.end() || !it->second.holds || !it->second.drift ||
            *it->second.drift > kSecularDrift) {
          secular = false;
          break;
        }
      }
      if (secular) result.secular_metrics.push_back(key);
    }
  }

  std::size_t flips = 0;
  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    if (result.points[i].spectrum_real == result.points[i + 1].spectrum_real) continue;
    if (flips++ == 0) {
      result.breaking_point = std::make_pair(result.points[i].value, result.points[i + 1].value);
    } else {
      result.warnings.push_back("additional reality change between " +
                                format_number(result.points[i].value) + " and " +
                                format_number(result.points[i + 1].value));
    }
  }
  return result;
}

Json to_json(const SweepResult& r) {
  Json doc = Json::object();
  doc["family"] = r.family;
  doc["parameter"] = r.parameter;
  Json fixed = Json::object();
  for (const auto& [k, v] : r.fixed) fixed[k] = v;
  doc["fixed"] = std::move(fixed);
  doc["values"] = r.values;
  Json rows = Json::array();
  for (const auto& p : r.points) {
    Json eig = Json::array();
    for (const auto& z : p.eigenvalues) eig.push_back(Json::array({z.real(), z.imag()}));
    Json metrics = Json::object();
    for (const auto& [key, fp] : p.metrics) {
      metrics[key] = Json{{"holds", fp.holds},
                          {"residual", fp.residual},
                          {"drift", fp.drift ? Json(*fp.drift) : Json(nullptr)}};
    }
    rows.push_back(Json{{"value", p.value},
                        {"max_abs_imag", p.max_abs_imag},
                        {"spectrum_real", p.spectrum_real},
                        {"eigenvalues", std::move(eig)},
                        {"metrics", std::move(metrics)}});
  }
  doc["rows"] = std::move(rows);
  doc["breaking_point"] = r.breaking_point
                              ? Json::array({r.breaking_point->first, r.breaking_point->second})
                              : Json(nullptr);
  doc["secular_metrics"] = r.secular_metrics;
  doc["warnings"] = r.warnings;
  return doc;
}

std::string to_table(const SweepResult& r) {
  std::string out = r.parameter + "\tmax_abs_imag\tspectrum_real\n";
  for (const auto& p : r.points) {
    out += format_number(p.value) + "\t" + format_number(p.max_abs_imag) + "\t" +
           (p.spectrum_real ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace pseudoreal::cli
