#include "pseudoreal/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pseudoreal {

std::string format_number(double value) {
  if (value == 0.0) return std::signbit(value) ? "-0" : "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out = "{\n  \"n\": " + std::to_string(m.size()) + ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ", ";
      out += "[" + format_number(m(i, j).real()) + ", " + format_number(m(i, j).imag()) + "]";
    }
    out += (i + 1 < m.size()) ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

ComplexMatrix parse_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matrix document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ParseError("field 'n' must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    throw ParseError("field 'rows' must be an array");
  }
  const auto& rows = doc["rows"];
  if (rows.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                     std::to_string(rows.size()));
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(n) +
                       " entries (matrix must be square)");
    }
    for (const auto& entry : row) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ParseError("row " + std::to_string(i) + ": entries must be [re, im] pairs");
      }
      entries.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  ComplexMatrix m(n, std::move(entries));
  if (!m.all_finite()) throw ParseError("matrix entries must be finite");
  return m;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file " + path.string());
  out << format_matrix(m);
}

}  // namespace pseudoreal
