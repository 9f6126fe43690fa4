#pragma once

#include <stdexcept>
#include <string>

namespace zetaburst {

/// Input lies outside the mathematical domain (pole, division by a ball
/// containing zero, log of a nonpositive ball, malformed label, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A tolerance could not be reached within the iteration or precision cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace zetaburst
