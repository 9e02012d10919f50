#pragma once

#include <stdexcept>
#include <string>

namespace rotinv {

/// A requested construction exceeds a dimension or memory cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Decoding a state that has no weight inside the code space.
class DegenerateDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input document violates a file schema. `pointer()` is a JSON pointer to
/// the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace rotinv
