#pragma once

#include <string>

#include "qme/core.hpp"

// Matrix files are JSON objects
//   {"rows": n, "cols": m, "data": [[re, im], ...]}
// with `data` in row-major order and length n*m. Writers print every
// component with 17 significant digits so that a store/load round trip is
// bit-exact.
namespace qme {

std::string matrix_to_json(const CMatrix& m);

/// Throws kParseError on malformed JSON, wrong data length, entries that are
/// not [re, im] pairs, or non-finite values.
CMatrix matrix_from_json(const std::string& text);

/// Throws kIoError when the file cannot be read, kParseError as above.
CMatrix load_matrix(const std::string& path);

/// Throws kIoError when the file cannot be written.
void store_matrix(const CMatrix& m, const std::string& path);

}  // namespace qme
