#include "pseudoreal/builtins.hpp"

#include <cmath>

namespace pseudoreal::builtins {
namespace {

constexpr Complex I(0.0, 1.0);

NamedMetric builtin_metric(std::string name, ComplexMatrix m) {
  return {std::move(name), std::move(m), ProvenanceKind::Builtin};
}

}  // namespace

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, -I}, {I, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix h5(double a, double b, double c) {
  return {{Complex(a, b), c}, {c, Complex(a, -b)}};
}

ComplexMatrix h6(double a, double b, double c) {
  return {{a + c, Complex(0.0, b)}, {Complex(0.0, b), a - c}};
}

ComplexMatrix h7(double a, double b, double c) {
  return {{a, Complex(0.0, b - c)}, {Complex(0.0, b + c), a}};
}

ComplexMatrix h8(double a, double b, double c, double d) {
  return {{Complex(a, b), Complex(c, d)}, {Complex(c, -d), Complex(a, -b)}};
}

ComplexMatrix m3(double g) {
  // <0|x^3|1> = 3 / (2 sqrt 2), <1|x^3|2> = 3, <0|x^3|2> = 0.
  const double x01 = 3.0 / (2.0 * std::sqrt(2.0));
  const double x12 = 3.0;
  const Complex c01(0.0, g * x01);
  const Complex c12(0.0, g * x12);
  return {{0.5, c01, 0.0}, {c01, 1.5, c12}, {0.0, c12, 2.5}};
}

ComplexMatrix m3_parity() {
  const double d[] = {1.0, -1.0, 1.0};
  return ComplexMatrix::diagonal(std::span<const double>(d));
}

H8Angles h8_angles(double b, double c, double d) {
  H8Angles out;
  out.phi = std::atan2(d, c);
  const double e2 = c * c + d * d - b * b;
  if (e2 > 0.0) {
    out.e = std::sqrt(e2);
    out.theta = std::atan(b / *out.e);
  }
  return out;
}

ComplexMatrix h8_eigenvector_diagonalizer(double b, double c, double d) {
  const H8Angles ang = h8_angles(b, c, d);
  if (!ang.theta) throw ParameterOutOfRange("H8 eigenvectors need c^2 + d^2 > b^2");
  const Complex e_minus_theta = std::polar(1.0, -*ang.theta);
  const Complex e_plus_theta = std::polar(1.0, *ang.theta);
  const Complex e_minus_phi = std::polar(1.0, -ang.phi);
  return {{-e_minus_theta, e_plus_theta}, {e_minus_phi, e_minus_phi}};
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"H5", "H6", "H7", "H8", "M3"};
  return names;
}

const std::vector<std::string>& builtin_parameters(const std::string& name) {
  static const std::map<std::string, std::vector<std::string>> params{
      {"H5", {"a", "b", "c"}},
      {"H6", {"a", "b", "c"}},
      {"H7", {"a", "b", "c"}},
      {"H8", {"a", "b", "c", "d"}},
      {"M3", {"g"}},
  };
  const auto it = params.find(name);
  if (it == params.end()) throw UnknownBuiltin("unknown builtin '" + name + "'");
  return it->second;
}

Builtin make_builtin(const std::string& name, const std::map<std::string, double>& params) {
  const auto& wanted = builtin_parameters(name);
  std::vector<double> v;
  for (const auto& p : wanted) {
    const auto it = params.find(p);
    if (it == params.end()) {
      throw MissingParameter("builtin " + name + " needs parameter '" + p + "'");
    }
    if (!std::isfinite(it->second)) {
      throw ParameterOutOfRange("parameter '" + p + "' must be finite");
    }
    v.push_back(it->second);
  }
  for (const auto& [key, value] : params) {
    (void)value;
    bool known = false;
    for (const auto& p : wanted) known = known || p == key;
    if (!known) throw ParameterOutOfRange("builtin " + name + " has no parameter '" + key + "'");
  }

  Builtin out;
  out.name = name;
  out.parameters = wanted;
  if (name == "H5") {
    out.matrix = h5(v[0], v[1], v[2]);
    out.candidates = {builtin_metric("sigma_x", sigma_x())};
  } else if (name == "H6") {
    out.matrix = h6(v[0], v[1], v[2]);
    out.candidates = {builtin_metric("sigma_z", sigma_z())};
  } else if (name == "H7") {
    out.matrix = h7(v[0], v[1], v[2]);
    out.candidates = {builtin_metric("sigma_x", sigma_x()), builtin_metric("sigma_y", sigma_y()),
                      builtin_metric("sigma_z", sigma_z())};
  } else if (name == "H8") {
    out.matrix = h8(v[0], v[1], v[2], v[3]);
    out.candidates = {builtin_metric("sigma_x", sigma_x())};
  } else {
    out.matrix = m3(v[0]);
    out.candidates = {builtin_metric("parity_diag", m3_parity())};
    out.parity = builtin_metric("parity_diag", m3_parity());
  }
  return out;
}

}  // namespace pseudoreal::builtins
