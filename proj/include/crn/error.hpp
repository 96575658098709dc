#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Error taxonomy used across the library.  CLI maps Hypothesis/NotApplicable
// to exit code 2, everything else to 1.
enum class ErrorCode {
  Parse,          // malformed input text
  Precondition,   // caller violated a documented precondition
  Hypothesis,     // theorem hypothesis not met (named in message)
  Budget,         // step/degree budget exhausted; result is "timeout", never wrong
  NotApplicable,  // operation does not apply to this input shape
  Internal,       // invariant breakage inside the library (a bug)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace crn
