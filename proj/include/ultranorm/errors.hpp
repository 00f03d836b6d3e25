#pragma once

#include <stdexcept>
#include <string>

namespace ultranorm {

/// A mathematical precondition of an operation does not hold.
/// `code` is a stable machine-readable tag (e.g. "dimension_mismatch").
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
  throw PreconditionError(std::move(code), message);
}

}  // namespace ultranorm
