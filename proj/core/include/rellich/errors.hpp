#pragma once

#include <stdexcept>
#include <string>

namespace rellich {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// A boundary correspondence stopped being a homeomorphism (x_alpha <= 0).
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// Linear solver breakdown or an oversized discretization.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A numerically observed ratio exceeded a proven constant.
class AnomalyError : public Error {
 public:
  AnomalyError(const std::string& what, double ratio) : Error(what), ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

}  // namespace rellich
