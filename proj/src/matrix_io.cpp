#include "qme/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qme {
namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string matrix_to_json(const CMatrix& m) {
  require_finite(m, "matrix");
  std::string out = "{\"rows\": " + std::to_string(m.rows()) +
                    ", \"cols\": " + std::to_string(m.cols()) +
                    ", \"data\": [";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != 0 || j != 0) out += ", ";
      out += '[';
      append_double(out, m(i, j).real());
      out += ", ";
      append_double(out, m(i, j).imag());
      out += ']';
    }
  }
  out += "]}\n";
  return out;
}

CMatrix matrix_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("data")) {
    fail(ErrorCode::kParseError, "expected an object with rows, cols, data");
  }
  const auto& rows = doc["rows"];
  const auto& cols = doc["cols"];
  const auto& data = doc["data"];
  if (!rows.is_number_unsigned() || !cols.is_number_unsigned() ||
      rows.get<std::uint64_t>() == 0 || cols.get<std::uint64_t>() == 0) {
    fail(ErrorCode::kParseError, "rows and cols must be positive integers");
  }
  const auto n = rows.get<std::uint64_t>();
  const auto m = cols.get<std::uint64_t>();
  if (!data.is_array() || data.size() != n * m) {
    fail(ErrorCode::kParseError, "data must hold rows*cols = " +
                                     std::to_string(n * m) + " entries");
  }
  CMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::uint64_t k = 0; k < n * m; ++k) {
    const auto& entry = data[k];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      fail(ErrorCode::kParseError,
           "entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail(ErrorCode::kParseError,
           "entry " + std::to_string(k) + " is not finite");
    }
    out(static_cast<Eigen::Index>(k / m), static_cast<Eigen::Index>(k % m)) =
        Complex(re, im);
  }
  return out;
}

CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIoError, "cannot read " + path);
  try {
    return matrix_from_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (" + path + ")");
  }
}

void store_matrix(const CMatrix& m, const std::string& path) {
  const std::string text = matrix_to_json(m);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
}

}  // namespace qme
