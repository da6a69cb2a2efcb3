#include "pseudoreal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pseudoreal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_condition(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", c);
  return buf;
}

void require_order(const ComplexMatrix& h, const ComplexMatrix& m, const std::string& what) {
  if (m.size() != h.size()) {
    throw DimensionMismatch(what + " has order " + std::to_string(m.size()) +
                            ", Hamiltonian has order " + std::to_string(h.size()));
  }
}

ComplexMatrix target_of(MetricKind kind, const ComplexMatrix& h) {
  switch (kind) {
    case MetricKind::PseudoReal:
      return conjugate(h);
    case MetricKind::PseudoAdjoint:
      return transpose(h);
    case MetricKind::PseudoHermitian:
      return dagger(h);
  }
  return h;
}

double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  return frobenius_norm(a - b) / std::max(1.0, scale);
}

RealityCheck reality_check_from_inverse(const ComplexMatrix& rho_inv,
                                        std::span<const Complex> psi,
                                        double metric_tol) {
  const double psi_norm = norm2(psi);
  if (!(psi_norm > 0.0)) throw ZeroVector("eigenstate_reality_check: psi is zero");
  const ComplexVector w = rho_inv * std::span<const Complex>(conjugate(psi));
  RealityCheck check;
  check.epsilon = inner(psi, w) / (psi_norm * psi_norm);
  const double w_norm = norm2(w);
  double diff = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) diff += std::norm(w[i] - check.epsilon * psi[i]);
  check.colinearity_residual = w_norm > 0.0 ? std::sqrt(diff) / w_norm : kInf;
  check.holds = check.colinearity_residual <= metric_tol;
  return check;
}

MetricReport failed_report(MetricKind kind, const ComplexMatrix& metric) {
  MetricReport r;
  r.kind = kind;
  r.metric = canonicalize(metric);
  r.residual = kInf;
  r.holds = false;
  return r;
}

}  // namespace

const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::PseudoReal:
      return "pseudo_real";
    case MetricKind::PseudoAdjoint:
      return "pseudo_adjoint";
    case MetricKind::PseudoHermitian:
      return "pseudo_hermitian";
  }
  return "?";
}

const char* to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::UserSupplied:
      return "user_supplied";
    case ProvenanceKind::FromDiagonalizer:
      return "from_diagonalizer";
    case ProvenanceKind::Composed:
      return "composed";
    case ProvenanceKind::Builtin:
      return "builtin";
  }
  return "?";
}

const MetricReport* ClassificationReport::find(MetricKind kind, std::string_view name) const {
  const auto& list = kind == MetricKind::PseudoReal      ? pseudo_real
                     : kind == MetricKind::PseudoAdjoint ? pseudo_adjoint
                                                         : pseudo_hermitian;
  for (const auto& r : list) {
    if (r.provenance.name == name) return &r;
  }
  return nullptr;
}

ComplexMatrix canonicalize(const ComplexMatrix& m, double rel_zero) {
  const double largest = max_abs(m);
  if (!(largest > 0.0)) return m;
  for (const auto& z : m.entries()) {
    if (std::abs(z) > rel_zero * largest) return (1.0 / z) * m;
  }
  return m;
}

MetricReport check_metric(MetricKind kind, const ComplexMatrix& h,
                          const ComplexMatrix& metric, const ToleranceConfig& tol) {
  require_order(h, metric, std::string(to_string(kind)) + " metric");
  MetricReport r;
  r.kind = kind;
  r.residual = similarity_residual(metric, h, target_of(kind, h));
  r.holds = r.residual <= tol.metric_tol;
  r.metric = canonicalize(metric);
  return r;
}

MetricReport check_pseudo_real(const ComplexMatrix& h, const ComplexMatrix& rho,
                               const ToleranceConfig& tol) {
  return check_metric(MetricKind::PseudoReal, h, rho, tol);
}

MetricReport check_pseudo_adjoint(const ComplexMatrix& h, const ComplexMatrix& mu,
                                  const ToleranceConfig& tol) {
  return check_metric(MetricKind::PseudoAdjoint, h, mu, tol);
}

MetricReport check_pseudo_hermitian(const ComplexMatrix& h, const ComplexMatrix& eta,
                                    const ToleranceConfig& tol) {
  return check_metric(MetricKind::PseudoHermitian, h, eta, tol);
}

ComplexMatrix compose_eta(const ComplexMatrix& rho, const ComplexMatrix& mu) {
  if (rho.size() != mu.size()) throw DimensionMismatch("compose_eta: rho and mu orders differ");
  return transpose(mu * inverse(rho).inverse);
}

ComplexMatrix rho_from_diagonalizer(const ComplexMatrix& d) {
  return conjugate(d) * inverse(d).inverse;
}

ComplexMatrix mu_from_diagonalizer(const ComplexMatrix& d) {
  const ComplexMatrix raw = inverse(d * transpose(d)).inverse;
  ComplexMatrix mu(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    mu(i, i) = raw(i, i);
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      mu(i, j) = mu(j, i) = 0.5 * (raw(i, j) + raw(j, i));
    }
  }
  return mu;
}

ComplexMatrix eta_plus_from_diagonalizer(const ComplexMatrix& d) {
  const ComplexMatrix raw = inverse(d * dagger(d)).inverse;
  ComplexMatrix eta(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    eta(i, i) = raw(i, i).real();
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      eta(i, j) = 0.5 * (raw(i, j) + std::conj(raw(j, i)));
      eta(j, i) = std::conj(eta(i, j));
    }
  }
  return eta;
}

RealityCheck eigenstate_reality_check(const ComplexMatrix& rho, std::span<const Complex> psi,
                                      const ToleranceConfig& tol) {
  if (psi.size() != rho.size()) {
    throw DimensionMismatch("eigenstate_reality_check: psi length differs from rho order");
  }
  if (!(norm2(psi) > 0.0)) throw ZeroVector("eigenstate_reality_check: psi is zero");
  return reality_check_from_inverse(inverse(rho).inverse, psi, tol.metric_tol);
}

ComplexMatrix reversal_parity(std::size_t n) {
  ComplexMatrix p(n);
  for (std::size_t i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
  return p;
}

ClassificationReport classify(const ComplexMatrix& h, const std::vector<NamedMetric>& candidates,
                              const ToleranceConfig& tol, const ClassifyOptions& options) {
  tol.validate();
  if (!h.all_finite()) throw InputError("classify: Hamiltonian has non-finite entries");
  const std::size_t n = h.size();
  for (const auto& c : candidates) require_order(h, c.matrix, "candidate '" + c.name + "'");

  ClassificationReport report;
  const double scale = frobenius_norm(h);
  report.hermitian.residual = relative_distance(h, dagger(h), scale);
  report.hermitian.holds = report.hermitian.residual <= tol.metric_tol;
  report.self_adjoint.residual = relative_distance(h, transpose(h), scale);
  report.self_adjoint.holds = report.self_adjoint.residual <= tol.metric_tol;

  std::vector<NamedMetric> pool = candidates;
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const bool has_identity = std::any_of(pool.begin(), pool.end(), [&](const NamedMetric& c) {
    return c.name == "identity" || c.matrix == id;
  });
  if (!has_identity) pool.push_back({"identity", id, ProvenanceKind::Builtin});

  auto append = [&](MetricKind kind, const ComplexMatrix& metric, Provenance provenance) {
    MetricReport r;
    try {
      r = check_metric(kind, h, metric, tol);
    } catch (const SingularMatrix&) {
      r = failed_report(kind, metric);
      report.warnings.push_back(std::string(to_string(kind)) + " candidate '" +
                                provenance.name + "' is singular");
    }
    r.provenance = std::move(provenance);
    auto& list = kind == MetricKind::PseudoReal      ? report.pseudo_real
                 : kind == MetricKind::PseudoAdjoint ? report.pseudo_adjoint
                                                     : report.pseudo_hermitian;
    list.push_back(std::move(r));
  };

  for (const auto& c : pool) {
    for (MetricKind kind :
         {MetricKind::PseudoReal, MetricKind::PseudoAdjoint, MetricKind::PseudoHermitian}) {
      append(kind, c.matrix, {c.origin, c.name});
    }
  }

  if (options.spectrum) {
    report.spectrum = *options.spectrum;
  } else {
    try {
      report.spectrum = eigendecompose(h, tol);
    } catch (const ConvergenceFailure& e) {
      report.warnings.push_back(std::string("eigendecomposition failed: ") + e.what());
    }
  }

  if (report.spectrum.size() == n && n > 0) {
    if (n > options.diagonalizer_limit) {
      report.warnings.push_back("order " + std::to_string(n) +
                                " exceeds diagonalizer limit; diagonalizer metrics skipped");
    } else if (!(report.spectrum.diagonalizer_condition <= 1.0 / tol.metric_tol)) {
      report.warnings.push_back(
          "diagonalizer is near-defective (condition " +
          format_condition(report.spectrum.diagonalizer_condition) +
          "); diagonalizer metrics suppressed");
    } else {
      try {
        const ComplexMatrix d = unit_columns(build_diagonalizer(report.spectrum, tol));
        append(MetricKind::PseudoReal, rho_from_diagonalizer(d),
               {ProvenanceKind::FromDiagonalizer, "from_D_rho"});
        append(MetricKind::PseudoAdjoint, mu_from_diagonalizer(d),
               {ProvenanceKind::FromDiagonalizer, "from_D_mu"});
        append(MetricKind::PseudoHermitian, eta_plus_from_diagonalizer(d),
               {ProvenanceKind::FromDiagonalizer, "from_D_eta_plus"});
      } catch (const NumericalError& e) {
        report.warnings.push_back(std::string("diagonalizer metrics unavailable: ") + e.what());
      }
    }
  }

  // eta = (mu rho^-1)' for every holding (rho, mu) pair.
  const std::vector<MetricReport> rhos = report.pseudo_real;
  const std::vector<MetricReport> mus = report.pseudo_adjoint;
  for (const auto& rho : rhos) {
    if (!rho.holds) continue;
    for (const auto& mu : mus) {
      if (!mu.holds) continue;
      ComplexMatrix eta;
      try {
        eta = compose_eta(rho.metric, mu.metric);
      } catch (const SingularMatrix&) {
        continue;
      }
      append(MetricKind::PseudoHermitian, eta,
             {ProvenanceKind::Composed,
              "composed(" + rho.provenance.name + "," + mu.provenance.name + ")"});
    }
  }

  if (options.check_pt) {
    NamedMetric parity = options.parity.value_or(
        NamedMetric{"reversal", reversal_parity(n), ProvenanceKind::Builtin});
    require_order(h, parity.matrix, "parity '" + parity.name + "'");
    PtCheck pt;
    pt.parity_name = parity.name;
    try {
      pt.residual = similarity_residual(parity.matrix, conjugate(h), h);
    } catch (const SingularMatrix&) {
      pt.residual = kInf;
      report.warnings.push_back("parity '" + parity.name + "' is singular");
    }
    pt.holds = pt.residual <= tol.metric_tol;
    report.pt_symmetric = pt;
  }

  std::vector<std::size_t> states;
  if (options.states) {
    states = *options.states;
  } else {
    for (std::size_t i = 0; i < report.spectrum.size(); ++i) states.push_back(i);
  }
  for (const auto& rho : report.pseudo_real) {
    if (!rho.holds) continue;
    ComplexMatrix rho_inv;
    try {
      rho_inv = inverse(rho.metric).inverse;
    } catch (const SingularMatrix&) {
      continue;
    }
    for (std::size_t idx : states) {
      if (idx >= report.spectrum.size()) {
        throw DimensionMismatch("classify: state index out of range");
      }
      RealityCheck check = reality_check_from_inverse(
          rho_inv, report.spectrum.pairs[idx].vector, tol.metric_tol);
      check.eigen_index = idx;
      check.metric_name = rho.provenance.name;
      report.reality_checks.push_back(std::move(check));
    }
  }
  return report;
}

SymmetryGenerator symmetry_generator(const ComplexMatrix& eta_i, const ComplexMatrix& eta_j,
                                     const ComplexMatrix& h) {
  require_order(h, eta_i, "eta_i");
  require_order(h, eta_j, "eta_j");
  SymmetryGenerator out;
  out.generator = inverse(eta_j).inverse * eta_i;
  const double denom = frobenius_norm(h) * frobenius_norm(out.generator);
  const double num = frobenius_norm(h * out.generator - out.generator * h);
  out.commutator_residual = denom > 0.0 ? num / denom : 0.0;
  return out;
}

}  // namespace pseudoreal
