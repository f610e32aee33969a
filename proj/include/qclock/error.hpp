#pragma once

#include <stdexcept>
#include <string>

namespace qclock {

enum class ErrorCode {
  InvalidParameter,
  DimensionMismatch,
  SizeLimit,
  NullEvent,
  NoTimingInformation,
  NonXState,
  Io,
};

// Every failure in the core surfaces as this exception; the C API maps
// code() onto qclock_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qclock
