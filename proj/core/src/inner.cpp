#include "pseudoreal/inner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pseudoreal {
namespace {

void check_states(const std::vector<ComplexVector>& states, std::size_t order,
                  const char* what) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != order) {
      throw DimensionMismatch(std::string(what) + ": state " + std::to_string(i) +
                              " has length " + std::to_string(states[i].size()) +
                              ", expected " + std::to_string(order));
    }
  }
}

std::size_t common_length(const std::vector<ComplexVector>& states) {
  return states.empty() ? 0 : states.front().size();
}

// Fills norms, signature and offdiag_max once gram is in place.
// metric_norm is ||eta|| for the pairing (1 for the implicit identity).
void summarize(GramReport& r, const std::vector<ComplexVector>& states, double metric_norm,
               bool conjugate_pairing, const GramOptions& opt) {
  const std::size_t m = states.size();
  if (opt.eigenvalues && opt.eigenvalues->size() != m) {
    throw DimensionMismatch("gram: eigenvalue count differs from state count");
  }
  r.norms.resize(m);
  r.signature.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.norms[i] = r.gram(i, i);
    const double psi2 = std::pow(norm2(states[i]), 2);
    const double dead = opt.metric_tol * metric_norm * psi2;
    const double re = r.norms[i].real();
    r.signature[i] = std::abs(re) <= dead ? Sign::Zero : (re > 0.0 ? Sign::Plus : Sign::Minus);
  }
  r.offdiag_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (opt.eigenvalues) {
        const Complex ei = conjugate_pairing ? std::conj((*opt.eigenvalues)[i])
                                             : (*opt.eigenvalues)[i];
        if (std::abs(ei - (*opt.eigenvalues)[j]) <= opt.separation * opt.scale) continue;
      }
      r.offdiag_max = std::max(r.offdiag_max, std::abs(r.gram(i, j)));
    }
  }
}

}  // namespace

const char* to_string(GramKind kind) {
  switch (kind) {
    case GramKind::EtaGram:
      return "eta";
    case GramKind::PTGram:
      return "pt";
    case GramKind::TransposeGram:
      return "transpose";
    case GramKind::HermitianGram:
      return "hermitian";
  }
  return "?";
}

char to_char(Sign sign) {
  switch (sign) {
    case Sign::Plus:
      return '+';
    case Sign::Minus:
      return '-';
    case Sign::Zero:
      return '0';
  }
  return '?';
}

GramReport eta_gram(const std::vector<ComplexVector>& states, const ComplexMatrix& eta,
                    const GramOptions& options) {
  check_states(states, eta.size(), "eta_gram");
  GramReport r;
  r.kind = GramKind::EtaGram;
  const std::size_t m = states.size();
  r.gram = ComplexMatrix(m);
  std::vector<ComplexVector> eta_states;
  eta_states.reserve(m);
  for (const auto& s : states) eta_states.push_back(eta * std::span<const Complex>(s));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.gram(i, j) = inner(states[i], eta_states[j]);
  summarize(r, states, frobenius_norm(eta), true, options);
  return r;
}

GramReport pt_gram(const std::vector<ComplexVector>& states, const ComplexMatrix& parity,
                   const GramOptions& options) {
  check_states(states, parity.size(), "pt_gram");
  GramReport r;
  r.kind = GramKind::PTGram;
  const std::size_t m = states.size();
  r.gram = ComplexMatrix(m);
  std::vector<ComplexVector> pt_states;
  pt_states.reserve(m);
  for (const auto& s : states) {
    pt_states.push_back(parity * std::span<const Complex>(conjugate(s)));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.gram(i, j) = bilinear(pt_states[i], states[j]);
  summarize(r, states, frobenius_norm(parity), true, options);
  return r;
}

GramReport transpose_gram(const std::vector<ComplexVector>& states,
                          const GramOptions& options) {
  check_states(states, common_length(states), "transpose_gram");
  GramReport r;
  r.kind = GramKind::TransposeGram;
  const std::size_t m = states.size();
  r.gram = ComplexMatrix(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.gram(i, j) = bilinear(states[i], states[j]);
  summarize(r, states, 1.0, false, options);
  return r;
}

GramReport hermitian_gram(const std::vector<ComplexVector>& states,
                          const GramOptions& options) {
  check_states(states, common_length(states), "hermitian_gram");
  GramReport r;
  r.kind = GramKind::HermitianGram;
  const std::size_t m = states.size();
  r.gram = ComplexMatrix(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r.gram(i, j) = inner(states[i], states[j]);
  summarize(r, states, 1.0, true, options);
  return r;
}

}  // namespace pseudoreal
