#include <cmath>
#include <limits>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "pseudoreal/builtins.hpp"
#include "pseudoreal/metrics.hpp"

using namespace pseudoreal;
using namespace pseudoreal::builtins;
using oracle::I;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool holds_under(const ClassificationReport& r, MetricKind kind, std::string_view name) {
  const MetricReport* m = r.find(kind, name);
  return m != nullptr && m->holds;
}

}  // namespace

TEST_CASE("check_pseudo_real examples") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = gen::uniform(rng, -2, 2), b = gen::uniform(rng, -2, 2),
                 c = gen::uniform(rng, -2, 2);
    const MetricReport r5 = check_pseudo_real(h5(a, b, c), sigma_x());
    CHECK(r5.holds);
    CHECK(r5.residual <= 1e-15);
    CHECK(r5.kind == MetricKind::PseudoReal);
    CHECK(check_pseudo_real(h6(a, b, c), sigma_z()).holds);
  }
  const ComplexMatrix real{{1.0, 2.0}, {-3.0, 4.0}};
  CHECK(check_pseudo_real(real, ComplexMatrix::identity(2)).holds);
  CHECK_THROWS_AS(check_pseudo_real(real, ComplexMatrix(2)), SingularMatrix);
}

TEST_CASE("check_pseudo_adjoint examples") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = gen::uniform(rng, -2, 2), b = gen::uniform(rng, -2, 2),
                 c = gen::uniform(rng, -2, 2);
    CHECK(check_pseudo_adjoint(h7(a, b, c), sigma_x()).holds);
    CHECK(check_pseudo_adjoint(h5(a, b, c), ComplexMatrix::identity(2)).holds);
  }
  const ComplexMatrix sym{{1.0, I}, {I, 2.0}};
  CHECK(check_pseudo_adjoint(sym, ComplexMatrix::identity(2)).holds);
}

TEST_CASE("check_pseudo_hermitian examples") {
  gen::Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = gen::uniform(rng, -2, 2), b = gen::uniform(rng, -2, 2),
                 c = gen::uniform(rng, -2, 2);
    CHECK(check_pseudo_hermitian(h5(a, b, c), sigma_x()).holds);
    CHECK(check_pseudo_hermitian(h7(a, b, c), sigma_y()).holds);
    CHECK(check_pseudo_hermitian(gen::hermitian(rng, 5), ComplexMatrix::identity(5)).holds);
  }
}

TEST_CASE("verdicts are invariant under scaling the metric") {
  gen::Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = gen::uniform(rng, -2, 2), b = gen::uniform(rng, -2, 2),
                 c = gen::uniform(rng, -2, 2);
    const ComplexMatrix h = h7(a, b, c);
    const Complex s = gen::complex(rng);
    for (const ComplexMatrix& m : {sigma_x(), sigma_y(), sigma_z()}) {
      for (MetricKind kind :
           {MetricKind::PseudoReal, MetricKind::PseudoAdjoint, MetricKind::PseudoHermitian}) {
        const MetricReport r1 = check_metric(kind, h, m);
        const MetricReport r2 = check_metric(kind, h, s * m);
        CHECK(r1.holds == r2.holds);
        CHECK(r2.residual == doctest::Approx(r1.residual).epsilon(1e-10));
        CHECK(oracle::max_entry_diff(r1.metric, r2.metric) <= 1e-14);
      }
    }
  }
}

TEST_CASE("canonicalize scales the first nonzero entry to one") {
  const ComplexMatrix m{{0.0, 2.0 * I}, {-2.0 * I, 0.0}};
  const ComplexMatrix c = canonicalize(m);
  CHECK(c(0, 1) == Complex(1.0, 0.0));
  CHECK(c(1, 0) == Complex(-1.0, 0.0));
  CHECK(canonicalize(c) == c);
}

TEST_CASE("compose_eta examples") {
  SUBCASE("parity and unit mu give back the parity") {
    const ComplexMatrix p = reversal_parity(5);
    CHECK(compose_eta(p, ComplexMatrix::identity(5)) == p);
  }
  SUBCASE("sigma_z and sigma_x compose to sigma_y up to scalar") {
    const ComplexMatrix eta = compose_eta(sigma_z(), sigma_x());
    CHECK(oracle::scalar_mismatch(sigma_y(), eta) <= 1e-15);
  }
  SUBCASE("equal rho and mu route") {
    gen::Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
      const auto inst = gen::real_spectrum(rng, 4, 30.0);
      const ComplexMatrix d = build_diagonalizer(eigendecompose(inst.h));
      const ComplexMatrix mu = mu_from_diagonalizer(d);
      const ComplexMatrix eta = compose_eta(mu, mu);
      CHECK(oracle::scalar_mismatch(ComplexMatrix::identity(4), eta) <= 1e-14);
    }
  }
}

TEST_CASE("composed metric certifies H7") {
  gen::Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h =
        h7(gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2));
    const MetricReport rr = check_pseudo_real(h, sigma_z());
    const MetricReport ra = check_pseudo_adjoint(h, sigma_x());
    REQUIRE(rr.holds);
    REQUIRE(ra.holds);
    const MetricReport rh = check_pseudo_hermitian(h, compose_eta(sigma_z(), sigma_x()));
    CHECK(rh.residual <= 10.0 * (rr.residual + ra.residual) + 1e-15);
  }
}

TEST_CASE("metrics from the H8 eigenvectors match the closed forms") {
  gen::Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = gen::uniform(rng, 0.5, 2.0), d = gen::uniform(rng, -1.5, 1.5);
    const double b = gen::uniform(rng, -0.95, 0.95) * std::hypot(c, d);
    const auto o = oracle::h8_oracle(b, c, d);
    CHECK(oracle::max_entry_diff(h8_eigenvector_diagonalizer(b, c, d), o.d) <= 1e-14);
    CHECK(oracle::max_entry_diff(rho_from_diagonalizer(o.d), oracle::h8_rho(o.theta, o.phi)) <=
          1e-8);
    CHECK(oracle::max_entry_diff(mu_from_diagonalizer(o.d), oracle::h8_mu(o.theta, o.phi)) <= 1e-8);
    CHECK(oracle::max_entry_diff(eta_plus_from_diagonalizer(o.d),
                                 oracle::h8_eta_plus(o.theta, o.phi)) <= 1e-8);
  }
}

TEST_CASE("metrics from unitary and trivial diagonalizers") {
  const ComplexMatrix one = ComplexMatrix::identity(3);
  CHECK(rho_from_diagonalizer(one) == one);
  CHECK(mu_from_diagonalizer(one) == one);
  CHECK(eta_plus_from_diagonalizer(one) == one);

  gen::Rng rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const ComplexMatrix u = build_diagonalizer(eigendecompose(gen::hermitian(rng, n)));
    // Eigenvectors are scaled to unit max-modulus; rescale columns to unit norm.
    ComplexMatrix q = u;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::norm(q(i, j));
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= std::sqrt(s);
    }
    const ComplexMatrix expected = conjugate(q) * dagger(q);
    CHECK(oracle::max_entry_diff(rho_from_diagonalizer(q), expected) <= 1e-12);
    CHECK(oracle::max_entry_diff(mu_from_diagonalizer(q), expected) <= 1e-12);
    CHECK(oracle::max_entry_diff(eta_plus_from_diagonalizer(q), ComplexMatrix::identity(n)) <=
          1e-12);
  }
}

TEST_CASE("structural properties of constructed metrics") {
  gen::Rng rng(39);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 12;
    const auto inst = gen::real_spectrum(rng, n, 50.0);
    const Spectrum s = eigendecompose(inst.h);
    const ComplexMatrix d = build_diagonalizer(s);
    const double kappa = inverse(d).condition_estimate;

    const ComplexMatrix rho = rho_from_diagonalizer(d);
    const double rr = frobenius_norm(rho * conjugate(rho) - ComplexMatrix::identity(n));
    CHECK(rr <= 64.0 * n * kEps * kappa * kappa);

    const ComplexMatrix mu = mu_from_diagonalizer(d);
    CHECK(mu == transpose(mu));

    const ComplexMatrix eta = eta_plus_from_diagonalizer(d);
    CHECK(eta == dagger(eta));
    for (const Complex& lambda : eigendecompose(eta).values()) CHECK(lambda.real() > 0.0);

    CHECK(check_pseudo_real(inst.h, rho).residual <= 1e-8);
    CHECK(check_pseudo_adjoint(inst.h, mu).residual <= 1e-8);
    CHECK(check_pseudo_hermitian(inst.h, eta).residual <= 1e-8);
  }
}

TEST_CASE("composed diagonalizer metrics agree with eta_plus") {
  gen::Rng rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const auto inst = gen::real_spectrum(rng, n, 100.0);
    const ComplexMatrix d = build_diagonalizer(eigendecompose(inst.h));
    const ComplexMatrix composed =
        compose_eta(rho_from_diagonalizer(d), mu_from_diagonalizer(d));
    CHECK(check_pseudo_hermitian(inst.h, composed).residual <= 1e-6);
    CHECK(oracle::scalar_mismatch(eta_plus_from_diagonalizer(d), composed) <= 1e-8);
  }
}

TEST_CASE("eigenstate_reality_check examples") {
  SUBCASE("H5 unbroken eigenvector under sigma_x") {
    const ComplexVector psi{1.0, Complex(0.8, -0.6)};
    const RealityCheck r = eigenstate_reality_check(sigma_x(), psi);
    CHECK(r.holds);
    CHECK(std::abs(r.epsilon - Complex(0.8, 0.6)) <= 1e-15);
    CHECK(std::abs(r.epsilon) == doctest::Approx(1.0));
  }
  SUBCASE("real vector and identity") {
    const ComplexVector psi{1.0, -2.0, 0.5};
    const RealityCheck r = eigenstate_reality_check(ComplexMatrix::identity(3), psi);
    CHECK(r.holds);
    CHECK(r.epsilon == Complex(1.0, 0.0));
  }
  SUBCASE("broken phase eigenvector fails") {
    const Spectrum s = eigendecompose(h5(0.0, 1.25, 1.0));
    REQUIRE(s.pairs[1].value.imag() > 0.7);
    CHECK_FALSE(eigenstate_reality_check(sigma_x(), s.pairs[1].vector).holds);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(eigenstate_reality_check(sigma_x(), ComplexVector{0.0, 0.0}), ZeroVector);
    CHECK_THROWS_AS(eigenstate_reality_check(sigma_x(), ComplexVector{1.0}), DimensionMismatch);
    CHECK_THROWS_AS(eigenstate_reality_check(ComplexMatrix(2), ComplexVector{1.0, 0.0}),
                    SingularMatrix);
  }
}

TEST_CASE("reality check holds exactly for real eigenvalues across families") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = gen::uniform(rng, -1, 1), b = gen::uniform(rng, -2, 2),
                 c = gen::uniform(rng, -2, 2), d = gen::uniform(rng, -2, 2);
    struct Case {
      ComplexMatrix h, rho;
    };
    for (const Case& k : {Case{h5(a, b, c), sigma_x()}, Case{h6(a, b, c), sigma_z()},
                          Case{h7(a, b, c), sigma_z()}, Case{h8(a, b, c, d), sigma_x()}}) {
      REQUIRE(check_pseudo_real(k.h, k.rho).residual <= 1e-12);
      const Spectrum s = eigendecompose(k.h);
      // The exceptional-point neighbourhood blurs both notions.
      if (std::abs(s.pairs[0].value - s.pairs[1].value) < 1e-6 * s.scale) continue;
      for (const Eigenpair& p : s.pairs) {
        const bool real = std::abs(p.value.imag()) <= 1e-8 * s.scale;
        CHECK(eigenstate_reality_check(k.rho, p.vector).holds == real);
      }
    }
  }
}

TEST_CASE("classify H6") {
  const ComplexMatrix h = h6(1.0, 1.0, 2.0);
  const ClassificationReport r =
      classify(h, {{"sigma_x", sigma_x()}, {"sigma_y", sigma_y()}, {"sigma_z", sigma_z()},
                   {"identity", ComplexMatrix::identity(2)}});
  CHECK(holds_under(r, MetricKind::PseudoReal, "sigma_z"));
  CHECK_FALSE(holds_under(r, MetricKind::PseudoReal, "sigma_x"));
  CHECK(r.self_adjoint.holds);
  CHECK(holds_under(r, MetricKind::PseudoAdjoint, "identity"));
  CHECK(holds_under(r, MetricKind::PseudoHermitian, "sigma_z"));
  CHECK_FALSE(r.hermitian.holds);
  const auto values = r.spectrum.values();
  CHECK(std::abs(values[0] - Complex(1.0 - std::sqrt(3.0), 0.0)) <= 1e-14);
  CHECK(std::abs(values[1] - Complex(1.0 + std::sqrt(3.0), 0.0)) <= 1e-14);
  CHECK(r.find(MetricKind::PseudoReal, "from_D_rho") != nullptr);
  CHECK(holds_under(r, MetricKind::PseudoHermitian, "from_D_eta_plus"));
  // Every eigenvector is checked under every holding rho.
  for (const RealityCheck& c : r.reality_checks) CHECK(c.holds);
  CHECK(r.reality_checks.size() >= 4);
}

TEST_CASE("classify a Hermitian matrix") {
  gen::Rng rng(42);
  const ComplexMatrix h = gen::hermitian(rng, 6);
  const ClassificationReport r = classify(h, {});
  CHECK(r.hermitian.holds);
  CHECK(holds_under(r, MetricKind::PseudoHermitian, "identity"));
  const MetricReport* eta = r.find(MetricKind::PseudoHermitian, "from_D_eta_plus");
  REQUIRE(eta != nullptr);
  CHECK(oracle::max_entry_diff(eta->metric, ComplexMatrix::identity(6)) <= 1e-10);
}

TEST_CASE("classify the 3x3 oscillator-basis matrix") {
  const ComplexMatrix h = m3(0.3);
  const ClassificationReport r = classify(h, {{"parity", m3_parity()}});
  CHECK(holds_under(r, MetricKind::PseudoReal, "parity"));
  CHECK(r.find(MetricKind::PseudoReal, "parity")->residual == 0.0);
}

TEST_CASE("classify warns instead of building metrics for defective input") {
  const ComplexMatrix j{{0.0, 1.0}, {0.0, 0.0}};
  const ClassificationReport r = classify(j, {});
  CHECK(r.find(MetricKind::PseudoReal, "from_D_rho") == nullptr);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("classify never throws on singular candidates") {
  const ClassificationReport r = classify(h5(0.0, 0.6, 1.0), {{"zero", ComplexMatrix(2)}});
  const MetricReport* z = r.find(MetricKind::PseudoReal, "zero");
  REQUIRE(z != nullptr);
  CHECK_FALSE(z->holds);
}

TEST_CASE("classification invariants") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    ComplexMatrix h = trial % 2 ? gen::hermitian(rng, n) : gen::matrix(rng, n);
    if (trial % 3 == 0) h = h + transpose(h);
    const ClassificationReport r = classify(h, {});
    if (r.hermitian.holds) CHECK(holds_under(r, MetricKind::PseudoHermitian, "identity"));
    if (r.self_adjoint.holds) CHECK(holds_under(r, MetricKind::PseudoAdjoint, "identity"));
  }
}

TEST_CASE("symmetry_generator examples") {
  const ComplexMatrix h7m = h7(0.0, 1.0, 2.0);
  SUBCASE("equal metrics") {
    const SymmetryGenerator g = symmetry_generator(sigma_y(), sigma_y(), h7m);
    CHECK(oracle::max_entry_diff(g.generator, ComplexMatrix::identity(2)) <= 1e-15);
    CHECK(g.commutator_residual <= 1e-15);
  }
  SUBCASE("sigma_x against eta_plus on H5") {
    const ComplexMatrix h = h5(0.0, 0.6, 1.0);
    const ComplexMatrix eta = eta_plus_from_diagonalizer(build_diagonalizer(eigendecompose(h)));
    const SymmetryGenerator g = symmetry_generator(sigma_x(), eta, h);
    CHECK(g.commutator_residual <= 1e-8);
    CHECK(oracle::scalar_mismatch(ComplexMatrix::identity(2), g.generator) > 1e-3);
  }
  SUBCASE("singular eta_j") {
    CHECK_THROWS_AS(symmetry_generator(sigma_x(), ComplexMatrix(2), h7m), SingularMatrix);
  }
}
