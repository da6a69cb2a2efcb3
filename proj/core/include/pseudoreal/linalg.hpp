#pragma once

// Dense complex matrices and the non-Hermitian eigendecomposition that the
// rest of the library is built on.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pseudoreal/errors.hpp"

namespace pseudoreal {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// n x n zero matrix.
  explicit ComplexMatrix(std::size_t n);
  /// Row-major entries; throws DimensionMismatch unless entries.size() == n*n.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);
  /// Throws DimensionMismatch for ragged or non-square input.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * n_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * n_ + col];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexVector conjugate(std::span<const Complex> v);

struct Involutions {
  ComplexMatrix conjugate;
  ComplexMatrix transpose;
  ComplexMatrix dagger;
};

/// Complex conjugate (*), transpose (') and Hermitian adjoint (dagger) at once.
Involutions involutions(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double one_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double norm2(std::span<const Complex> v);

/// Unconjugated bilinear form u'v.
Complex bilinear(std::span<const Complex> u, std::span<const Complex> v);
/// Sesquilinear form u^dagger v.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

struct InverseResult {
  ComplexMatrix inverse;
  /// One-norm condition estimate, >= 1.
  double condition_estimate = 1.0;
};

/// LU inverse with partial pivoting. Throws SingularMatrix when a pivot
/// magnitude falls below n * eps * ||M||_F.
InverseResult inverse(const ComplexMatrix& m);

/// Condition estimate only; +infinity for exactly singular input.
double condition_estimate(const ComplexMatrix& m);

struct ToleranceConfig {
  double residual_tol = 1e-10;
  double reality_tol = 1e-8;
  double pairing_tol = 1e-8;
  double metric_tol = 1e-8;

  /// Throws ParameterOutOfRange unless every field is finite and > 0.
  void validate() const;
};

enum class Reality { Real, ConjugatePaired, Complex };

struct RealityTag {
  Reality kind = Reality::Complex;
  /// Index of the conjugate partner; meaningful only for ConjugatePaired.
  std::size_t partner = 0;

  friend bool operator==(const RealityTag&, const RealityTag&) = default;
};

struct Eigenpair {
  Complex value;
  ComplexVector vector;
  /// ||H v - lambda v||_2 / (||H||_F ||v||_2)
  double residual = 0.0;
  RealityTag reality;
};

struct Spectrum {
  std::vector<Eigenpair> pairs;
  /// Condition estimate of the eigenvector matrix; +infinity if singular.
  double diagonalizer_condition = 1.0;
  /// max(1, ||H||_F) of the decomposed matrix; tolerances are relative to it.
  double scale = 1.0;

  std::size_t size() const noexcept { return pairs.size(); }
  std::vector<Complex> values() const;
  std::vector<ComplexVector> vectors() const;
  double max_abs_imag() const;
};

/// Every eigenpair of H, sorted ascending by real part (ties by imaginary
/// part), eigenvectors scaled so that their largest component equals 1.
/// Throws ConvergenceFailure if the QR iteration stalls or a residual exceeds
/// tol.residual_tol.
Spectrum eigendecompose(const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// Recomputes reality tags for pairs in their current order.
void assign_reality(Spectrum& spectrum, const ToleranceConfig& tol);

/// D with column k equal to eigenvector k. Throws NearDefective when the
/// condition estimate exceeds 1 / metric_tol.
ComplexMatrix build_diagonalizer(const Spectrum& spectrum,
                                 const ToleranceConfig& tol = {});

/// Copy of m with every nonzero column scaled to unit 2-norm.
ComplexMatrix unit_columns(const ComplexMatrix& m);

/// ||S H S^-1 - target||_F / max(1, ||H||_F).
double similarity_residual(const ComplexMatrix& s, const ComplexMatrix& h,
                           const ComplexMatrix& target);

}  // namespace pseudoreal
