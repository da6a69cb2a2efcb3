#pragma once

// Finite-difference discretization of H = p^2 / (2m) + V(x) on a uniform
// grid with Dirichlet boundaries, hbar = 1.
//
// Interior points x_j = x_min + (j + 1) h, h = (x_max - x_min) / (n + 1).
// On a symmetric grid (x_min == -x_max) the points are mirrored exactly, so
// the reversal parity maps x_j to -x_j bit for bit.

#include <string>
#include <variant>
#include <vector>

#include "pseudoreal/linalg.hpp"

namespace pseudoreal {

struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = 16;
  double mass = 1.0;

  /// Throws InvalidGrid.
  void validate() const;
  bool symmetric() const noexcept { return x_min == -x_max; }
  double spacing() const noexcept {
    return (x_max - x_min) / static_cast<double>(n_points + 1);
  }
  std::vector<double> points() const;
};

namespace potential {

/// V = m alpha^2 x^2 / 2
struct Harmonic {
  double alpha = 1.0;
};

/// (p + i beta x)^2 / (2m) + m alpha^2 x^2 / 2; real spectrum (n + 1/2) alpha
/// for every beta.
struct GaugedOscillator {
  double alpha = 1.0;
  double beta = 0.0;
};

/// (p - 3 gamma x^2)^2 / (2m) + m alpha^2 x^2 / 2; Hermitian.
struct GaugedHermitian {
  double alpha = 1.0;
  double gamma = 0.0;
};

/// V = D^2 e^{-2x} - (2C + 1) D e^{-x}; bound levels -(C - n)^2 when 2m = 1.
struct Morse {
  double c = 1.0;
  double depth = 1.0;
};

/// V = i g x^k with k odd.
struct MonomialPT {
  double g = 1.0;
  int k = 3;
};

}  // namespace potential

using PotentialFamily =
    std::variant<potential::Harmonic, potential::GaugedOscillator,
                 potential::GaugedHermitian, potential::Morse, potential::MonomialPT>;

struct PotentialSpec {
  PotentialFamily family = potential::Harmonic{};
  /// The scalar potential is evaluated at x - i * imaginary_shift.
  double imaginary_shift = 0.0;

  /// Throws ParameterOutOfRange.
  void validate() const;
};

std::string family_name(const PotentialFamily& family);

struct DiscreteOperators {
  ComplexMatrix position;   // X, real diagonal
  ComplexMatrix momentum;   // Pm, central difference, Pm' = -Pm
  ComplexMatrix kinetic;    // K, three-point stencil / (2m), K' = K
  ComplexMatrix parity;     // Par, grid reversal, Par^2 = I
};

DiscreteOperators build_operators(const GridSpec& grid);

ComplexMatrix build_hamiltonian(const PotentialSpec& pot, const GridSpec& grid);

/// Relative residual ||G H G^-1 - H'||_F / ||H||_F for G = diag(gauge),
/// evaluated entrywise so strongly graded gauges stay usable.
double gauge_similarity_residual(std::span<const Complex> gauge, const ComplexMatrix& h);

struct BoundStates {
  /// The k lowest states (by real part) passing the decay filter, with
  /// reality tags recomputed within this subset.
  Spectrum states;
  /// Indices of those states in the full spectrum.
  std::vector<std::size_t> indices;
  /// Lower-lying states that failed the filter; reported, not used.
  std::vector<Eigenpair> rejected;
  std::vector<std::size_t> rejected_indices;
  Spectrum full;
};

/// Decay filter: |psi(edge)| <= edge_ratio * max |psi| at both ends.
BoundStates bound_spectrum(const ComplexMatrix& h, const GridSpec& grid, std::size_t k,
                           const ToleranceConfig& tol = {}, double edge_ratio = 1e-4);

}  // namespace pseudoreal
