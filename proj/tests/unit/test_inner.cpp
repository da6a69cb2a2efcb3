#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "pseudoreal/builtins.hpp"
#include "pseudoreal/inner.hpp"
#include "pseudoreal/metrics.hpp"

using namespace pseudoreal;
using namespace pseudoreal::builtins;
using oracle::I;

namespace {

std::vector<Sign> signs(std::initializer_list<Sign> s) { return s; }

GramOptions with_values(const Spectrum& s) {
  GramOptions o;
  o.eigenvalues = s.values();
  o.scale = s.scale;
  return o;
}

}  // namespace

TEST_CASE("eta gram of the H5 eigenvectors under sigma_x") {
  const std::vector<ComplexVector> states{{1.0, Complex(0.8, -0.6)}, {1.0, Complex(-0.8, -0.6)}};
  const GramReport g = eta_gram(states, sigma_x());
  CHECK(g.kind == GramKind::EtaGram);
  CHECK(std::abs(g.norms[0] - 1.6) <= 1e-15);
  CHECK(std::abs(g.norms[1] + 1.6) <= 1e-15);
  CHECK(g.signature == signs({Sign::Plus, Sign::Minus}));
  CHECK(g.offdiag_max <= 1e-15);
}

TEST_CASE("broken-phase eigenvectors have zero pseudo-norm") {
  const Spectrum s = eigendecompose(h5(0.0, 1.25, 1.0));
  const GramReport g = eta_gram(s.vectors(), sigma_x(), with_values(s));
  for (const Complex& n : g.norms) CHECK(std::abs(n) <= 1e-14);
  CHECK(g.signature == signs({Sign::Zero, Sign::Zero}));
}

TEST_CASE("unit eta reduces to the Hermitian gram") {
  gen::Rng rng(51);
  std::vector<ComplexVector> states;
  for (int k = 0; k < 4; ++k) states.push_back(gen::vector(rng, 4));
  const GramReport a = eta_gram(states, ComplexMatrix::identity(4));
  const GramReport b = hermitian_gram(states);
  CHECK(oracle::max_entry_diff(a.gram, b.gram) <= 1e-14);
  CHECK(a.signature == b.signature);
}

TEST_CASE("pt gram with unit parity equals the transpose gram on real states") {
  const std::vector<ComplexVector> states{{1.0, 2.0, -1.0}, {0.5, 0.0, 3.0}};
  CHECK(pt_gram(states, ComplexMatrix::identity(3)).gram == transpose_gram(states).gram);
}

TEST_CASE("pt gram with sigma_x parity matches the eta gram under sigma_x") {
  const Spectrum s = eigendecompose(h5(0.0, 0.6, 1.0));
  const GramReport pt = pt_gram(s.vectors(), sigma_x());
  const GramReport eta = eta_gram(s.vectors(), sigma_x());
  CHECK(pt.kind == GramKind::PTGram);
  CHECK(oracle::max_entry_diff(pt.gram, eta.gram) <= 1e-15);
  CHECK(pt.signature == eta.signature);
}

TEST_CASE("transpose gram examples") {
  SUBCASE("orthonormal real basis") {
    const std::vector<ComplexVector> states{{1.0, 0.0}, {0.0, 1.0}};
    CHECK(transpose_gram(states).gram == ComplexMatrix::identity(2));
  }
  SUBCASE("self-adjoint H5 has transpose-orthogonal eigenvectors") {
    const Spectrum s = eigendecompose(h5(0.0, 0.6, 1.0));
    CHECK(transpose_gram(s.vectors(), with_values(s)).offdiag_max <= 1e-14);
  }
  SUBCASE("isotropic vector") {
    const GramReport g = transpose_gram({{1.0, I}});
    CHECK(g.norms[0] == Complex(0.0, 0.0));
    CHECK(g.signature == signs({Sign::Zero}));
  }
}

TEST_CASE("hermitian gram examples") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector v = gen::vector(rng, 5);
    const GramReport g = hermitian_gram({v});
    CHECK(g.norms[0].real() == doctest::Approx(norm2(v) * norm2(v)));
    CHECK(g.signature == signs({Sign::Plus}));
  }
  SUBCASE("Hermitian eigenvectors are orthogonal") {
    const ComplexMatrix h = gen::hermitian(rng, 6);
    const Spectrum s = eigendecompose(h);
    const ComplexMatrix q = unit_columns(build_diagonalizer(s));
    std::vector<ComplexVector> states(6, ComplexVector(6));
    for (std::size_t k = 0; k < 6; ++k) {
      for (std::size_t i = 0; i < 6; ++i) states[k][i] = q(i, k);
    }
    CHECK(oracle::max_entry_diff(hermitian_gram(states).gram, ComplexMatrix::identity(6)) <=
          1e-12);
  }
}

TEST_CASE("H8 eigenvectors are positive under eta_plus and the Hermitian product") {
  const ComplexMatrix h = h8(1.0, 1.0, 2.0, 1.0);
  const Spectrum s = eigendecompose(h);
  const ComplexMatrix eta = eta_plus_from_diagonalizer(build_diagonalizer(s));
  CHECK(eta_gram(s.vectors(), eta).signature == signs({Sign::Plus, Sign::Plus}));
  CHECK(hermitian_gram(s.vectors()).signature == signs({Sign::Plus, Sign::Plus}));
}

TEST_CASE("gram dimension errors") {
  const std::vector<ComplexVector> ragged{{1.0, 0.0}, {1.0}};
  CHECK_THROWS_AS(hermitian_gram(ragged), DimensionMismatch);
  CHECK_THROWS_AS(transpose_gram(ragged), DimensionMismatch);
  CHECK_THROWS_AS(eta_gram({{1.0, 0.0, 0.0}}, sigma_x()), DimensionMismatch);
  CHECK_THROWS_AS(pt_gram({{1.0, 0.0, 0.0}}, sigma_x()), DimensionMismatch);
}

TEST_CASE("scaling eta scales every gram entry") {
  gen::Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix eta = gen::matrix(rng, 3);
    std::vector<ComplexVector> states;
    for (int k = 0; k < 3; ++k) states.push_back(gen::vector(rng, 3));
    const Complex c = gen::complex(rng);
    const GramReport a = eta_gram(states, eta);
    const GramReport b = eta_gram(states, c * eta);
    CHECK(oracle::max_entry_diff(c * a.gram, b.gram) <= 1e-13 * std::abs(c) * max_abs(a.gram));
  }
}

TEST_CASE("eta orthogonality and zero pseudo-norms on random pseudo-Hermitian matrices") {
  gen::Rng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    // H = eta^-1 A with A Hermitian and eta Hermitian indefinite is eta-pseudo-Hermitian.
    const std::size_t n = 2 + trial % 7;
    const ComplexMatrix eta = gen::hermitian(rng, n);
    const ComplexMatrix h = inverse(eta).inverse * gen::hermitian(rng, n);
    if (check_pseudo_hermitian(h, eta).residual > 1e-12) continue;
    const Spectrum s = eigendecompose(h);
    const GramReport g = eta_gram(s.vectors(), eta, with_values(s));
    const double eta_norm = frobenius_norm(eta);
    // Vectors have unit max-modulus, so ||psi|| <= sqrt(n).
    CHECK(g.offdiag_max <= 1e-8 * eta_norm * static_cast<double>(n));
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (std::abs(s.pairs[k].value.imag()) > 1e-8 * s.scale) {
        CHECK(std::abs(g.norms[k]) <= 1e-8 * s.scale * eta_norm * static_cast<double>(n));
      }
    }
  }
}

TEST_CASE("eta_plus signature is all plus for real spectra") {
  gen::Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = gen::real_spectrum(rng, 2 + trial % 10, 50.0);
    const Spectrum s = eigendecompose(inst.h);
    const ComplexMatrix eta = eta_plus_from_diagonalizer(build_diagonalizer(s));
    for (Sign sign : eta_gram(s.vectors(), eta).signature) CHECK(sign == Sign::Plus);
  }
}
