#include "pseudoreal/schrodinger.hpp"

#include <cmath>
#include <string>

namespace pseudoreal {
namespace {

constexpr std::size_t kMaxPoints = 4096;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ParameterOutOfRange(std::string(name) + " must be finite");
}

// Unit phase e^{i theta} with e^{-i theta} == conj(e^{i theta}) bit for bit.
Complex unit_phase(double theta) {
  return theta >= 0.0 ? std::polar(1.0, theta) : std::conj(std::polar(1.0, -theta));
}

template <class T>
T ipow(T base, int k) {
  T out = 1.0;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidGrid("grid bounds must be finite");
  }
  if (!(x_max > x_min)) throw InvalidGrid("grid needs x_max > x_min");
  if (n_points < 16) throw InvalidGrid("grid needs at least 16 points");
  if (n_points > kMaxPoints) {
    throw InvalidGrid("grid is limited to " + std::to_string(kMaxPoints) + " points");
  }
  if (!std::isfinite(mass) || !(mass > 0.0)) throw InvalidGrid("mass must be positive");
}

std::vector<double> GridSpec::points() const {
  const double h = spacing();
  std::vector<double> x(n_points);
  if (symmetric()) {
    for (std::size_t j = 0; j < n_points / 2; ++j) {
      x[j] = x_min + static_cast<double>(j + 1) * h;
      x[n_points - 1 - j] = -x[j];
    }
    if (n_points % 2 == 1) x[n_points / 2] = 0.0;
  } else {
    for (std::size_t j = 0; j < n_points; ++j) x[j] = x_min + static_cast<double>(j + 1) * h;
  }
  return x;
}

void PotentialSpec::validate() const {
  require_finite(imaginary_shift, "imaginary shift");
  std::visit(overloaded{
                 [](const potential::Harmonic& p) {
                   require_finite(p.alpha, "alpha");
                   if (!(p.alpha > 0.0)) throw ParameterOutOfRange("alpha must be positive");
                 },
                 [](const potential::GaugedOscillator& p) {
                   require_finite(p.alpha, "alpha");
                   require_finite(p.beta, "beta");
                   if (!(p.alpha > 0.0)) throw ParameterOutOfRange("alpha must be positive");
                 },
                 [](const potential::GaugedHermitian& p) {
                   require_finite(p.alpha, "alpha");
                   require_finite(p.gamma, "gamma");
                   if (!(p.alpha > 0.0)) throw ParameterOutOfRange("alpha must be positive");
                 },
                 [](const potential::Morse& p) {
                   require_finite(p.c, "C");
                   require_finite(p.depth, "D");
                   if (!(p.c > 0.0)) throw ParameterOutOfRange("Morse C must be positive");
                   if (!(p.depth > 0.0)) throw ParameterOutOfRange("Morse D must be positive");
                 },
                 [](const potential::MonomialPT& p) {
                   require_finite(p.g, "g");
                   if (p.k < 1 || p.k % 2 == 0) {
                     throw ParameterOutOfRange("monomial exponent k must be odd and positive");
                   }
                 },
             },
             family);
}

std::string family_name(const PotentialFamily& family) {
  return std::visit(overloaded{
                        [](const potential::Harmonic&) { return "harmonic"; },
                        [](const potential::GaugedOscillator&) { return "gauged-oscillator"; },
                        [](const potential::GaugedHermitian&) { return "gauged-hermitian"; },
                        [](const potential::Morse&) { return "morse"; },
                        [](const potential::MonomialPT&) { return "monomial-pt"; },
                    },
                    family);
}

DiscreteOperators build_operators(const GridSpec& grid) {
  grid.validate();
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  const std::vector<double> x = grid.points();

  DiscreteOperators ops{ComplexMatrix::diagonal(std::span<const double>(x)), ComplexMatrix(n),
                        ComplexMatrix(n), ComplexMatrix(n)};
  const Complex hop(0.0, 1.0 / (2.0 * h));
  const double t = 1.0 / (2.0 * grid.mass * h * h);
  for (std::size_t j = 0; j < n; ++j) {
    ops.kinetic(j, j) = 2.0 * t;
    if (j + 1 < n) {
      ops.momentum(j, j + 1) = -hop;
      ops.momentum(j + 1, j) = hop;
      ops.kinetic(j, j + 1) = -t;
      ops.kinetic(j + 1, j) = -t;
    }
    ops.parity(j, n - 1 - j) = 1.0;
  }
  return ops;
}

ComplexMatrix build_hamiltonian(const PotentialSpec& pot, const GridSpec& grid) {
  grid.validate();
  pot.validate();
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  const double m = grid.mass;
  const double t = 1.0 / (2.0 * m * h * h);
  const std::vector<double> x = grid.points();
  const double a = pot.imaginary_shift;

  ComplexMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out(j, j) = 2.0 * t;
    if (j + 1 < n) out(j, j + 1) = out(j + 1, j) = -t;
  }

  // Shifted abscissa x - i a; the a == 0 case stays exactly real.
  const auto z = [&](std::size_t j) { return Complex(x[j], -a); };
  const auto oscillator = [&](double alpha, std::size_t j) -> Complex {
    if (a == 0.0) return 0.5 * m * alpha * alpha * x[j] * x[j];
    return 0.5 * m * alpha * alpha * z(j) * z(j);
  };

  std::visit(
      overloaded{
          [&](const potential::Harmonic& p) {
            for (std::size_t j = 0; j < n; ++j) out(j, j) += oscillator(p.alpha, j);
          },
          [&](const potential::GaugedOscillator& p) {
            // S K S^-1 with S = diag(e^{beta x^2 / 2}).
            for (std::size_t j = 0; j + 1 < n; ++j) {
              const double d = 0.5 * p.beta * (x[j] * x[j] - x[j + 1] * x[j + 1]);
              out(j, j + 1) = -t * std::exp(d);
              out(j + 1, j) = -t * std::exp(-d);
            }
            for (std::size_t j = 0; j < n; ++j) out(j, j) += oscillator(p.alpha, j);
          },
          [&](const potential::GaugedHermitian& p) {
            // U K U^dagger with U = diag(e^{i gamma x^3}).
            for (std::size_t j = 0; j + 1 < n; ++j) {
              const Complex phase =
                  unit_phase(p.gamma * (ipow(x[j], 3) - ipow(x[j + 1], 3)));
              out(j, j + 1) = -t * phase;
              out(j + 1, j) = -t * std::conj(phase);
            }
            for (std::size_t j = 0; j < n; ++j) out(j, j) += oscillator(p.alpha, j);
          },
          [&](const potential::Morse& p) {
            const double x0 = std::log(2.0 * p.depth / (2.0 * p.c + 1.0));
            if (!(x0 > grid.x_min && x0 < grid.x_max)) {
              throw ParameterOutOfRange("grid does not cover the Morse well at x = " +
                                        std::to_string(x0));
            }
            const double lin = (2.0 * p.c + 1.0) * p.depth;
            const double quad = p.depth * p.depth;
            for (std::size_t j = 0; j < n; ++j) {
              const Complex e1 = std::exp(-z(j));
              out(j, j) += quad * e1 * e1 - lin * e1;
            }
          },
          [&](const potential::MonomialPT& p) {
            for (std::size_t j = 0; j < n; ++j) {
              if (a == 0.0) {
                out(j, j) += Complex(0.0, p.g * ipow(x[j], p.k));
              } else {
                out(j, j) += Complex(0.0, p.g) * ipow(z(j), p.k);
              }
            }
          },
      },
      pot.family);

  if (!out.all_finite()) {
    throw ParameterOutOfRange("potential overflows on this grid");
  }
  return out;
}

double gauge_similarity_residual(std::span<const Complex> gauge, const ComplexMatrix& h) {
  if (gauge.size() != h.size()) {
    throw DimensionMismatch("gauge_similarity_residual: gauge length differs from order");
  }
  double diff = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h(j, k) == 0.0 && h(k, j) == 0.0) continue;
      diff += std::norm(gauge[j] * h(j, k) / gauge[k] - h(k, j));
    }
  }
  const double fro = frobenius_norm(h);
  return fro > 0.0 ? std::sqrt(diff) / fro : 0.0;
}

BoundStates bound_spectrum(const ComplexMatrix& h, const GridSpec& grid, std::size_t k,
                           const ToleranceConfig& tol, double edge_ratio) {
  grid.validate();
  if (h.size() != grid.n_points) {
    throw DimensionMismatch("bound_spectrum: matrix order differs from grid size");
  }
  if (k < 1 || k > grid.n_points / 4) {
    throw ParameterOutOfRange("bound_spectrum: k must lie in [1, n_points / 4]");
  }
  BoundStates out;
  out.full = eigendecompose(h, tol);
  out.states.scale = out.full.scale;
  out.states.diagonalizer_condition = out.full.diagonalizer_condition;
  for (std::size_t i = 0; i < out.full.size() && out.indices.size() < k; ++i) {
    const auto& v = out.full.pairs[i].vector;
    double largest = 0.0;
    for (const auto& c : v) largest = std::max(largest, std::abs(c));
    const bool decays = std::abs(v.front()) <= edge_ratio * largest &&
                        std::abs(v.back()) <= edge_ratio * largest;
    if (decays) {
      out.states.pairs.push_back(out.full.pairs[i]);
      out.indices.push_back(i);
    } else {
      out.rejected.push_back(out.full.pairs[i]);
      out.rejected_indices.push_back(i);
    }
  }
  assign_reality(out.states, tol);
  return out;
}

}  // namespace pseudoreal
