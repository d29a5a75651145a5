#pragma once

#include <stdexcept>
#include <string>

namespace fuzzynv {

/// Violated precondition on an argument (bad weight, beta outside [0,1], ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed: quadrature did not converge, a root could not
/// be bracketed, a mapped function produced a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace fuzzynv
