#include "pseudoreal/linalg.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pseudoreal {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b,
                       const char* what) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.size()) +
                            "x" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + "x" +
                            std::to_string(b.size()));
  }
}

lapack_int as_lapack(std::size_t n) { return static_cast<lapack_int>(n); }

struct LuFactors {
  ComplexMatrix lu;
  std::vector<lapack_int> pivots;
  lapack_int info = 0;
};

LuFactors factor(const ComplexMatrix& m) {
  LuFactors f{m, std::vector<lapack_int>(std::max<std::size_t>(m.size(), 1)), 0};
  const lapack_int n = as_lapack(m.size());
  f.info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, f.lu.entries().data(), n,
                          f.pivots.data());
  return f;
}

double min_pivot(const LuFactors& f) {
  double p = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.lu.size(); ++i) p = std::min(p, std::abs(f.lu(i, i)));
  return p;
}

double condition_from_lu(const LuFactors& f, double anorm) {
  if (f.info > 0) return std::numeric_limits<double>::infinity();
  double rcond = 0.0;
  const lapack_int n = as_lapack(f.lu.size());
  const lapack_int info = LAPACKE_zgecon(LAPACK_ROW_MAJOR, '1', n,
                                         f.lu.entries().data(), n, anorm, &rcond);
  if (info != 0 || !(rcond > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(1.0, 1.0 / rcond);
}

// Index of the component used to fix the eigenvector phase: the first one
// whose modulus is within a relative 1e-8 of the largest.
std::size_t phase_pivot(std::span<const Complex> v) {
  double largest = 0.0;
  for (const auto& z : v) largest = std::max(largest, std::abs(z));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= largest * (1.0 - 1e-8)) return i;
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw DimensionMismatch("matrix of order " + std::to_string(n_) + " needs " +
                            std::to_string(n_ * n_) + " entries, got " +
                            std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionMismatch("matrix rows must form a square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_size(*this, other, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_size(*this, other, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_size(lhs, rhs, "matrix product");
  const std::size_t n = lhs.size();
  ComplexMatrix out(n);
  if (n == 0) return out;
  const Complex one(1.0, 0.0);
  const Complex zero(0.0, 0.0);
  const auto ni = static_cast<int>(n);
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, ni, ni, ni, &one,
              lhs.entries().data(), ni, rhs.entries().data(), ni, &zero,
              out.entries().data(), ni);
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.size()) {
    throw DimensionMismatch("matrix-vector product: order " +
                            std::to_string(m.size()) + " vs length " +
                            std::to_string(v.size()));
  }
  ComplexVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Involutions and norms

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.entries()) z = std::conj(z);
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = m(i, j);
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexVector conjugate(std::span<const Complex> v) {
  ComplexVector out(v.begin(), v.end());
  for (auto& z : out) z = std::conj(z);
  return out;
}

Involutions involutions(const ComplexMatrix& m) {
  return {conjugate(m), transpose(m), dagger(m)};
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (const auto& z : m.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

double one_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double norm2(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

Complex bilinear(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw DimensionMismatch("bilinear form: length mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw DimensionMismatch("inner product: length mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

// ---------------------------------------------------------------------------
// Inverse

InverseResult inverse(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {ComplexMatrix{}, 1.0};
  const double fro = frobenius_norm(m);
  const double threshold = static_cast<double>(n) * kEps * fro;

  LuFactors f = factor(m);
  const double pivot = min_pivot(f);
  if (f.info > 0 || !(pivot >= threshold) || fro == 0.0) {
    throw SingularMatrix("matrix is singular to working precision (min pivot " +
                         std::to_string(pivot) + ", threshold " +
                         std::to_string(threshold) + ")");
  }
  const double cond = condition_from_lu(f, one_norm(m));

  const lapack_int ni = as_lapack(n);
  const lapack_int info =
      LAPACKE_zgetri(LAPACK_ROW_MAJOR, ni, f.lu.entries().data(), ni, f.pivots.data());
  if (info != 0) throw SingularMatrix("zgetri failed with info " + std::to_string(info));
  return {std::move(f.lu), cond};
}

double condition_estimate(const ComplexMatrix& m) {
  if (m.empty()) return 1.0;
  const LuFactors f = factor(m);
  if (f.info > 0 || min_pivot(f) == 0.0) return std::numeric_limits<double>::infinity();
  return condition_from_lu(f, one_norm(m));
}

// ---------------------------------------------------------------------------
// Tolerances

void ToleranceConfig::validate() const {
  const auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ParameterOutOfRange(std::string(name) + " must be a finite positive number");
    }
  };
  check(residual_tol, "residual_tol");
  check(reality_tol, "reality_tol");
  check(pairing_tol, "pairing_tol");
  check(metric_tol, "metric_tol");
}

// ---------------------------------------------------------------------------
// Spectrum

std::vector<Complex> Spectrum::values() const {
  std::vector<Complex> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

std::vector<ComplexVector> Spectrum::vectors() const {
  std::vector<ComplexVector> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.vector);
  return out;
}

double Spectrum::max_abs_imag() const {
  double best = 0.0;
  for (const auto& p : pairs) best = std::max(best, std::abs(p.value.imag()));
  return best;
}

void assign_reality(Spectrum& spectrum, const ToleranceConfig& tol) {
  auto& pairs = spectrum.pairs;
  const double real_cut = tol.reality_tol * spectrum.scale;
  const double pair_cut = tol.pairing_tol * spectrum.scale;
  for (auto& p : pairs) {
    p.reality = std::abs(p.value.imag()) <= real_cut ? RealityTag{Reality::Real, 0}
                                                     : RealityTag{Reality::Complex, 0};
  }
  std::vector<bool> taken(pairs.size(), false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].reality.kind != Reality::Complex || taken[i]) continue;
    std::size_t best = pairs.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (j == i || taken[j] || pairs[j].reality.kind == Reality::Real) continue;
      const double gap = std::abs(pairs[i].value - std::conj(pairs[j].value));
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best < pairs.size() && best_gap <= pair_cut) {
      taken[i] = taken[best] = true;
      pairs[i].reality = {Reality::ConjugatePaired, best};
      pairs[best].reality = {Reality::ConjugatePaired, i};
    }
  }
}

Spectrum eigendecompose(const ComplexMatrix& h, const ToleranceConfig& tol) {
  tol.validate();
  if (!h.all_finite()) throw InputError("eigendecompose: matrix has non-finite entries");
  const std::size_t n = h.size();
  Spectrum spectrum;
  const double fro = frobenius_norm(h);
  spectrum.scale = std::max(1.0, fro);
  if (n == 0) return spectrum;

  ComplexMatrix work = h;
  std::vector<Complex> w(n);
  ComplexMatrix vr(n);
  const lapack_int ni = as_lapack(n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'V', ni, work.entries().data(), ni,
                    w.data(), nullptr, ni, vr.entries().data(), ni);
  if (info > 0) {
    std::vector<Complex> converged(w.begin() + info, w.end());
    throw ConvergenceFailure("QR iteration failed to converge; " +
                                 std::to_string(converged.size()) + " of " +
                                 std::to_string(n) + " eigenvalues converged",
                             std::move(converged));
  }
  if (info < 0) throw NumericalError("zgeev rejected argument " + std::to_string(-info));

  // Fix the phase of every column: divide by its pivot component.
  for (std::size_t k = 0; k < n; ++k) {
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = vr(i, k);
    const Complex pivot = col[phase_pivot(col)];
    for (std::size_t i = 0; i < n; ++i) vr(i, k) = col[i] / pivot;
  }

  // Residuals ||H v - lambda v|| / (||H||_F ||v||), all columns in one product.
  const ComplexMatrix hv = h * vr;
  std::vector<double> residuals(n);
  for (std::size_t k = 0; k < n; ++k) {
    double r2 = 0.0;
    double v2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r2 += std::norm(hv(i, k) - w[k] * vr(i, k));
      v2 += std::norm(vr(i, k));
    }
    residuals[k] = fro > 0.0 ? std::sqrt(r2) / (fro * std::sqrt(v2)) : 0.0;
  }

  // Ascending real part; real parts within the pairing tolerance count as
  // tied and are ordered by imaginary part.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a].real() != w[b].real()) return w[a].real() < w[b].real();
    return w[a].imag() < w[b].imag();
  });
  const double tie = tol.pairing_tol * spectrum.scale;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && w[order[end]].real() - w[order[start]].real() <= tie) ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return w[a].imag() < w[b].imag(); });
    start = end;
  }

  spectrum.pairs.reserve(n);
  ComplexMatrix d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    Eigenpair p;
    p.value = w[src];
    p.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.vector[i] = vr(i, src);
      d(i, k) = vr(i, src);
    }
    p.residual = residuals[src];
    spectrum.pairs.push_back(std::move(p));
  }
  assign_reality(spectrum, tol);
  spectrum.diagonalizer_condition = condition_estimate(d);

  double worst = 0.0;
  for (const auto& p : spectrum.pairs) worst = std::max(worst, p.residual);
  if (!(worst <= tol.residual_tol)) {
    throw ConvergenceFailure("eigenpair residual " + std::to_string(worst) +
                                 " exceeds residual_tol",
                             spectrum.values());
  }
  return spectrum;
}

ComplexMatrix build_diagonalizer(const Spectrum& spectrum, const ToleranceConfig& tol) {
  const std::size_t n = spectrum.size();
  ComplexMatrix d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = spectrum.pairs[k].vector;
    if (v.size() != n) throw DimensionMismatch("build_diagonalizer: eigenvector length");
    for (std::size_t i = 0; i < n; ++i) d(i, k) = v[i];
  }
  const double cond = condition_estimate(d);
  if (!(cond <= 1.0 / tol.metric_tol)) {
    throw NearDefective("diagonalizer condition " + std::to_string(cond) +
                            " exceeds 1/metric_tol",
                        cond);
  }
  return d;
}

ComplexMatrix unit_columns(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  ComplexMatrix out = m;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(m(i, j));
    if (s == 0.0) continue;
    const double r = 1.0 / std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) out(i, j) *= r;
  }
  return out;
}

double similarity_residual(const ComplexMatrix& s, const ComplexMatrix& h,
                           const ComplexMatrix& target) {
  require_same_size(s, h, "similarity_residual");
  require_same_size(h, target, "similarity_residual");
  const InverseResult inv = inverse(s);
  const ComplexMatrix diff = s * h * inv.inverse - target;
  return frobenius_norm(diff) / std::max(1.0, frobenius_norm(h));
}

}  // namespace pseudoreal
