#pragma once

#include <stdexcept>
#include <string>

namespace umeb {

/// Raised when an input violates a documented precondition or type invariant.
/// The message names the violated rule.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when two operands have incompatible shapes.
class DimensionMismatch : public InvalidInput {
 public:
  explicit DimensionMismatch(const std::string& what) : InvalidInput(what) {}
};

}  // namespace umeb
