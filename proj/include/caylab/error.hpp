#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace caylab {

// All library failures carry a stable machine-readable code plus a human
// message. Tests and the CLI dispatch on the code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace caylab
