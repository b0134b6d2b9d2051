#pragma once

#include <stdexcept>
#include <string>

namespace singmod {

// Failure with a stable machine-readable code, e.g. "NOT_ISOMETRY".
class CodedError : public std::runtime_error {
 public:
  CodedError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace singmod
