#pragma once

#include <stdexcept>
#include <string>

namespace qme {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kParseError,
  kIoError,
  kEigFailure,
  kSizeGuard,
  kNotComplete,
  kNotASolvent,
  kNotDiagonalizable,
  kSingularMatrix,
  kNotCommuting,
  kSingularA,
  kNotUnitary,
  kZeroTransmission,
  kNumericalFailure,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Every failure the library reports carries one of
/// the codes above; the CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace qme
