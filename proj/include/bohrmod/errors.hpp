#pragma once

#include <stdexcept>
#include <string>

namespace bohrmod {

// Numerical precondition failed (not Hermitian / not PSD / conditioning floor breached).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Instance generation failed (infeasible constraint set or retry budget exhausted).
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bohrmod
