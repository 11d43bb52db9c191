#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qme/core.hpp"

namespace qme {

/// Transfer matrix of one period of a lossless layered structure,
///   M = [[1/t, r*/t*], [r/t, 1/t*]],   |r|^2 + |t|^2 = 1.
class UnitCell {
 public:
  /// Throws kZeroTransmission for t = 0, kNotUnitary when
  /// | |r|^2 + |t|^2 - 1 | > 1e-12.
  UnitCell(Complex t, Complex r);

  Complex t() const { return t_; }
  Complex r() const { return r_; }
  const CMatrix& m() const { return m_; }
  /// Re(1/t); M is a solvent of M^2 - 2 cos(beta) M + E = 0.
  double cos_beta() const { return cos_beta_; }
  /// ||M^2 - 2 cos(beta) M + E||_F at construction.
  double qme_residual() const { return qme_residual_; }

 private:
  Complex t_;
  Complex r_;
  CMatrix m_;
  double cos_beta_;
  double qme_residual_;
};

inline UnitCell unit_cell(Complex t, Complex r) { return UnitCell(t, r); }

/// M^N = U_{N-1}(cos beta) M - U_{N-2}(cos beta) E. Throws kInvalidArgument
/// for n < 1.
CMatrix n_period(const UnitCell& cell, int n);

/// (sin N beta / sin beta) M - (sin (N-1) beta / sin beta) E. Only defined
/// inside a band (|cos beta| < 1); throws kInvalidArgument otherwise.
CMatrix n_period_sine(const UnitCell& cell, int n);

struct SpectrumRow {
  std::size_t index = 0;
  double cos_beta = 0.0;
  /// 1 / |(M^N)_11|^2
  double transmittance = 0.0;
};

struct SpectrumError {
  std::size_t index = 0;
  std::string message;
};

struct Spectrum {
  std::vector<SpectrumRow> rows;
  std::vector<SpectrumError> errors;
};

/// Per-sample N-period transmittance. Invalid samples are recorded in
/// `errors` and skipped.
Spectrum transmission_spectrum(
    const std::vector<std::pair<Complex, Complex>>& samples, int n);

/// "index,cos_beta,transmittance" followed by one row per valid sample.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

/// Reads samples from CSV with header "t_re,t_im,r_re,r_im".
/// Throws kIoError / kParseError.
std::vector<std::pair<Complex, Complex>> read_samples_csv(
    const std::string& path);

}  // namespace qme
