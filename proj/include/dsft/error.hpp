#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace dsft {

enum class ErrorCode {
  InvalidArgument = 1,
  Precondition = 2,
  ExceptionalFrequency = 3,
  GridMismatch = 4,
  NotConverged = 5,
  Numerical = 6,
  Io = 7,
};

// Single exception type for the library; the code survives the trip through
// the C API so callers can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Short number formatting for messages.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace dsft
