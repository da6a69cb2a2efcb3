#pragma once

// Text interchange format for matrices:
//
//   { "n": 2, "rows": [ [[re, im], [re, im]], [[re, im], [re, im]] ] }
//
// Numbers are written with 17 significant digits, so export followed by
// import reproduces every entry bit for bit.

#include <filesystem>
#include <string>
#include <string_view>

#include "pseudoreal/linalg.hpp"

namespace pseudoreal {

/// Shortest decimal form that uses 17 significant digits ("%.17g").
std::string format_number(double value);

std::string format_matrix(const ComplexMatrix& m);

/// Throws ParseError for malformed JSON, missing fields, ragged or
/// non-square rows, or entries that are not [re, im] number pairs.
ComplexMatrix parse_matrix(std::string_view text);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace pseudoreal
