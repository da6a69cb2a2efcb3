#pragma once

// Gram matrices of a set of states under the four pairings used for
// non-Hermitian Hamiltonians:
//
//   EtaGram        psi_m^dagger eta psi_n
//   PTGram         (P psi_m*)' psi_n
//   TransposeGram  psi_m' psi_n
//   HermitianGram  psi_m^dagger psi_n
//
// States are used exactly as given; no renormalization happens here.

#include <optional>
#include <vector>

#include "pseudoreal/linalg.hpp"

namespace pseudoreal {

enum class GramKind { EtaGram, PTGram, TransposeGram, HermitianGram };

enum class Sign { Plus, Minus, Zero };

const char* to_string(GramKind kind);
char to_char(Sign sign);

struct GramReport {
  GramKind kind = GramKind::HermitianGram;
  /// m x m for m states.
  ComplexMatrix gram;
  /// Largest off-diagonal modulus over pairs the pairing must annihilate.
  double offdiag_max = 0.0;
  std::vector<Complex> norms;
  std::vector<Sign> signature;
};

struct GramOptions {
  /// Eigenvalues of the states. When present, offdiag_max only looks at
  /// pairs with |E_m* - E_n| (|E_m - E_n| for TransposeGram) above
  /// separation * scale; otherwise at every i != j.
  std::optional<std::vector<Complex>> eigenvalues;
  double separation = 1e-6;
  double scale = 1.0;
  /// Signature dead zone: |Re N| <= metric_tol * ||eta|| * ||psi||^2 is 0.
  double metric_tol = 1e-8;
};

GramReport eta_gram(const std::vector<ComplexVector>& states, const ComplexMatrix& eta,
                    const GramOptions& options = {});
GramReport pt_gram(const std::vector<ComplexVector>& states, const ComplexMatrix& parity,
                   const GramOptions& options = {});
GramReport transpose_gram(const std::vector<ComplexVector>& states,
                          const GramOptions& options = {});
GramReport hermitian_gram(const std::vector<ComplexVector>& states,
                          const GramOptions& options = {});

}  // namespace pseudoreal
