#pragma once

#include <stdexcept>
#include <string>

namespace pinchlab {

/// Raised when an argument lies outside the domain of an operation
/// (dimension mismatch, k < 1 where k >= 1 is required, delta outside (0,1], ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field fails the degree-drop constraint required by an identity.
class ConstraintViolation : public std::runtime_error {
 public:
  ConstraintViolation(const std::string& what, int top_degree)
      : std::runtime_error(what), top_degree_(top_degree) {}
  /// Highest harmonic degree found where the constraint demanded a lower one.
  int top_degree() const noexcept { return top_degree_; }

 private:
  int top_degree_;
};

/// The constrained subspace requested from a nullspace computation is {0}.
class ZeroSubspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pinchlab
