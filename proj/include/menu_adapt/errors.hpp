#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace menu_adapt {

enum class ErrorKind {
  kFileNotFound,
  kSchema,
  kDuplicateLabel,
  kEmptyInternalNode,
  kMultipleRoots,
  kCycle,
  kUnknownLabel,
  kNotALeaf,
  kNotAChild,
  kMassOutOfTolerance,
  kInvalidCost,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Raised for malformed inputs. Maps to CLI exit status 1.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when two independent computations disagree. Maps to exit status 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace menu_adapt
