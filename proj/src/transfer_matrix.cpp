#include "qme/transfer_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qme/commuting_case.hpp"

namespace qme {

UnitCell::UnitCell(Complex t, Complex r) : t_(t), r_(r) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) ||
      !std::isfinite(r.real()) || !std::isfinite(r.imag())) {
    fail(ErrorCode::kInvalidArgument, "t and r must be finite");
  }
  if (t == 0.0) fail(ErrorCode::kZeroTransmission, "t = 0");
  const double defect = std::norm(r) + std::norm(t) - 1.0;
  if (std::abs(defect) > 1e-12) {
    fail(ErrorCode::kNotUnitary,
         "|r|^2 + |t|^2 - 1 = " + std::to_string(defect));
  }
  const Complex tc = std::conj(t);
  m_.resize(2, 2);
  m_ << 1.0 / t, std::conj(r) / tc, r / t, 1.0 / tc;
  cos_beta_ = (1.0 / t).real();
  const CMatrix res = m_ * m_ - 2.0 * cos_beta_ * m_ + identity(2);
  qme_residual_ = res.norm();
  const double scale = 1.0 + m_.squaredNorm() + 2.0 * std::abs(cos_beta_) * m_.norm();
  if (qme_residual_ > 1e-12 * scale) {
    fail(ErrorCode::kNumericalFailure,
         "cell QME residual " + std::to_string(qme_residual_));
  }
}

CMatrix n_period(const UnitCell& cell, int n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "period count must be >= 1");
  const Complex x = cell.cos_beta();
  return chebyshev_u(n - 1, x) * cell.m() - chebyshev_u(n - 2, x) * identity(2);
}

CMatrix n_period_sine(const UnitCell& cell, int n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "period count must be >= 1");
  if (!(std::abs(cell.cos_beta()) < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "sine form needs |cos beta| < 1");
  }
  const double beta = std::acos(cell.cos_beta());
  const double s = std::sin(beta);
  return (std::sin(n * beta) / s) * cell.m() -
         (std::sin((n - 1) * beta) / s) * identity(2);
}

Spectrum transmission_spectrum(
    const std::vector<std::pair<Complex, Complex>>& samples, int n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "period count must be >= 1");
  Spectrum out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      const UnitCell cell(samples[i].first, samples[i].second);
      const CMatrix mn = n_period(cell, n);
      out.rows.push_back({i, cell.cos_beta(), 1.0 / std::norm(mn(0, 0))});
    } catch (const Error& e) {
      out.errors.push_back({i, e.what()});
    }
  }
  return out;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,cos_beta,transmittance\n";
  char buf[96];
  for (const SpectrumRow& row : spectrum.rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", row.index,
                  row.cos_beta, row.transmittance);
    out << buf;
  }
}

std::vector<std::pair<Complex, Complex>> read_samples_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParseError, "empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_re,t_im,r_re,r_im") {
    fail(ErrorCode::kParseError, "expected header t_re,t_im,r_re,r_im");
  }
  std::vector<std::pair<Complex, Complex>> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) {
      fail(ErrorCode::kParseError,
           path + ":" + std::to_string(lineno) + ": expected 4 fields");
    }
    double v[4];
    for (std::size_t k = 0; k < 4; ++k) {
      try {
        std::size_t used = 0;
        v[k] = std::stod(cells[k], &used);
        if (used != cells[k].size() || !std::isfinite(v[k])) {
          throw std::invalid_argument(cells[k]);
        }
      } catch (const std::exception&) {
        fail(ErrorCode::kParseError, path + ":" + std::to_string(lineno) +
                                         ": bad number '" + cells[k] + "'");
      }
    }
    out.emplace_back(Complex(v[0], v[1]), Complex(v[2], v[3]));
  }
  return out;
}

}  // namespace qme
