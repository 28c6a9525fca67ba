#pragma once

#include <stdexcept>
#include <string>

namespace wwlab {

// Numerical failure (non-contraction, NaN, blow-up). The message names the failing operation.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& operation, const std::string& detail)
      : std::runtime_error(operation + ": " + detail), operation_(operation) {}
  const std::string& operation() const { return operation_; }

 private:
  std::string operation_;
};

}  // namespace wwlab
