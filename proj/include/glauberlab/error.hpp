#pragma once

#include <stdexcept>
#include <string>

namespace glab {

enum class ErrorCode {
  InvalidArgument = 1,
  NotChordal,
  CapExceeded,
  Improper,
  NotErgodic,
  Precondition,
  Io,
  Parse,
  WeightDeficit,
  Usage,
  Internal,
};

const char* to_string(ErrorCode code);

// All library failures surface as this exception; the C layer maps the code
// to a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace glab
