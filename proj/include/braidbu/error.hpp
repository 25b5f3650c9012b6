#pragma once

#include <stdexcept>
#include <string>

namespace braidbu {

/// Caller passed a parameter outside the supported range (e.g. m < 2).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Caller passed malformed data (a cell not in the complex, a path that does
/// not close up, a non-surjective classifying map, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was invoked on an object that does not satisfy its
/// documented precondition (e.g. an insufficiently subdivided graph).
class PreconditionViolation : public std::logic_error {
 public:
  explicit PreconditionViolation(const std::string& what) : std::logic_error(what) {}
};

/// An internal consistency check failed. For valid inputs this never fires;
/// seeing it means a mathematical invariant of the construction was broken.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace braidbu
