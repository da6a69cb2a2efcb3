#pragma once

// Small matrix Hamiltonians with known certifying metrics.
//
//   H5 = [[a+ib, c], [c, a-ib]]          rho = sigma_x, mu = 1, eta = sigma_x
//   H6 = [[a+c, ib], [ib, a-c]]          rho = sigma_z, mu = 1, eta = sigma_z
//   H7 = [[a, i(b-c)], [i(b+c), a]]      rho = sigma_z, mu = sigma_x, eta ~ sigma_y
//   H8 = [[a+ib, c+id], [c-id, a-ib]]    rho = sigma_x
//   M3 = 3-state oscillator-basis truncation of p^2/2 + x^2/2 + i g x^3,
//        rho = diag(1, -1, 1)
//
// H5-H7 have eigenvalues a +- sqrt(c^2 - b^2), H8 has a -+ sqrt(c^2+d^2-b^2).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoreal/linalg.hpp"
#include "pseudoreal/metrics.hpp"

namespace pseudoreal::builtins {

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

ComplexMatrix h5(double a, double b, double c);
ComplexMatrix h6(double a, double b, double c);
ComplexMatrix h7(double a, double b, double c);
ComplexMatrix h8(double a, double b, double c, double d);
ComplexMatrix m3(double g);

/// diag(1, -1, 1): oscillator-basis parity for M3.
ComplexMatrix m3_parity();

struct H8Angles {
  /// sqrt(c^2 + d^2 - b^2); only defined when c^2 + d^2 > b^2.
  std::optional<double> e;
  std::optional<double> theta;  // arctan(b / e)
  double phi = 0.0;             // arg(c + i d)
};

H8Angles h8_angles(double b, double c, double d);

/// Columns (-e^{-i theta}, e^{-i phi}) and (e^{i theta}, e^{-i phi}): the
/// eigenvectors for a - e and a + e. Throws ParameterOutOfRange in the
/// broken phase.
ComplexMatrix h8_eigenvector_diagonalizer(double b, double c, double d);

struct Builtin {
  std::string name;
  /// Parameter names in the order the builder takes them.
  std::vector<std::string> parameters;
  ComplexMatrix matrix;
  std::vector<NamedMetric> candidates;
  /// Parity for the PT check; empty means the reversal default.
  std::optional<NamedMetric> parity;
};

const std::vector<std::string>& builtin_names();
const std::vector<std::string>& builtin_parameters(const std::string& name);

/// Throws UnknownBuiltin or MissingParameter.
Builtin make_builtin(const std::string& name, const std::map<std::string, double>& params);

}  // namespace pseudoreal::builtins
