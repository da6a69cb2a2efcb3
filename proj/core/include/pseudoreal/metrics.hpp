#pragma once

// Certifying similarity metrics for a Hamiltonian H:
//
//   pseudo-real      rho H rho^-1 = H*
//   pseudo-adjoint   mu  H mu^-1  = H'
//   pseudo-Hermitian eta H eta^-1 = H^dagger
//
// plus constructions of all three from a diagonalizer D, and the eigenstate
// condition rho^-1 psi* = eps psi that separates real from complex
// eigenvalues of a pseudo-real H.

#include <optional>
#include <string>
#include <vector>

#include "pseudoreal/linalg.hpp"

namespace pseudoreal {

enum class MetricKind { PseudoReal, PseudoAdjoint, PseudoHermitian };

enum class ProvenanceKind { UserSupplied, FromDiagonalizer, Composed, Builtin };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::UserSupplied;
  std::string name;
};

struct NamedMetric {
  std::string name;
  ComplexMatrix matrix;
  ProvenanceKind origin = ProvenanceKind::UserSupplied;
};

struct MetricReport {
  MetricKind kind = MetricKind::PseudoReal;
  /// Canonically normalized (first non-negligible entry, row-major, is 1).
  ComplexMatrix metric;
  double residual = 0.0;
  bool holds = false;
  Provenance provenance;
};

struct RealityCheck {
  std::size_t eigen_index = 0;
  /// Name of the rho the check ran against.
  std::string metric_name;
  Complex epsilon;
  double colinearity_residual = 0.0;
  bool holds = false;
};

struct FlagCheck {
  bool holds = false;
  double residual = 0.0;
};

struct PtCheck {
  std::string parity_name;
  double residual = 0.0;
  bool holds = false;
};

struct ClassificationReport {
  FlagCheck hermitian;     // ||H - H^dagger||_F / max(1, ||H||_F)
  FlagCheck self_adjoint;  // ||H - H'||_F / max(1, ||H||_F)
  std::vector<MetricReport> pseudo_real;
  std::vector<MetricReport> pseudo_adjoint;
  std::vector<MetricReport> pseudo_hermitian;
  std::optional<PtCheck> pt_symmetric;
  Spectrum spectrum;
  std::vector<RealityCheck> reality_checks;
  std::vector<std::string> warnings;

  /// First holding report of the given kind with this provenance name.
  const MetricReport* find(MetricKind kind, std::string_view name) const;
};

const char* to_string(MetricKind kind);
const char* to_string(ProvenanceKind kind);

/// Scales m so that its first entry (row-major) whose modulus exceeds
/// rel_zero * max|m| equals 1. The zero matrix is returned unchanged.
ComplexMatrix canonicalize(const ComplexMatrix& m, double rel_zero = 1e-8);

MetricReport check_pseudo_real(const ComplexMatrix& h, const ComplexMatrix& rho,
                               const ToleranceConfig& tol = {});
MetricReport check_pseudo_adjoint(const ComplexMatrix& h, const ComplexMatrix& mu,
                                  const ToleranceConfig& tol = {});
MetricReport check_pseudo_hermitian(const ComplexMatrix& h, const ComplexMatrix& eta,
                                    const ToleranceConfig& tol = {});
MetricReport check_metric(MetricKind kind, const ComplexMatrix& h,
                          const ComplexMatrix& metric, const ToleranceConfig& tol = {});

/// (mu rho^-1)'
ComplexMatrix compose_eta(const ComplexMatrix& rho, const ComplexMatrix& mu);

/// D* D^-1
ComplexMatrix rho_from_diagonalizer(const ComplexMatrix& d);
/// (D D')^-1, symmetrized so that mu == mu' exactly.
ComplexMatrix mu_from_diagonalizer(const ComplexMatrix& d);
/// (D D^dagger)^-1, Hermitized so that eta == eta^dagger exactly.
ComplexMatrix eta_plus_from_diagonalizer(const ComplexMatrix& d);

/// w = rho^-1 psi*, eps = (psi^dagger w) / (psi^dagger psi),
/// residual = ||w - eps psi|| / ||w||.
RealityCheck eigenstate_reality_check(const ComplexMatrix& rho,
                                      std::span<const Complex> psi,
                                      const ToleranceConfig& tol = {});

struct ClassifyOptions {
  /// Parity used for the PT check; the anti-diagonal reversal when empty.
  std::optional<NamedMetric> parity;
  bool check_pt = true;
  /// Reuse an existing decomposition instead of recomputing it.
  std::optional<Spectrum> spectrum;
  /// Diagonalizer metrics are skipped above this order.
  std::size_t diagonalizer_limit = 512;
  /// Restrict eigenstate reality checks to these spectrum indices.
  std::optional<std::vector<std::size_t>> states;
};

/// Runs every check against every candidate (identity is always included),
/// adds diagonalizer metrics when D is well conditioned and composed etas
/// for every holding (rho, mu) pair. Failed checks are recorded, never thrown.
ClassificationReport classify(const ComplexMatrix& h,
                              const std::vector<NamedMetric>& candidates,
                              const ToleranceConfig& tol = {},
                              const ClassifyOptions& options = {});

struct SymmetryGenerator {
  ComplexMatrix generator;
  double commutator_residual = 0.0;
};

/// For two metrics of the same H, g = eta_j^-1 eta_i commutes with H.
/// Residual is ||H g - g H||_F / (||H||_F ||g||_F).
SymmetryGenerator symmetry_generator(const ComplexMatrix& eta_i,
                                     const ComplexMatrix& eta_j,
                                     const ComplexMatrix& h);

/// Anti-diagonal reversal matrix (grid/basis reversal parity).
ComplexMatrix reversal_parity(std::size_t n);

}  // namespace pseudoreal
