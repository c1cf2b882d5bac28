#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace asygeo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (r <= 0, p <= 1, r1 >= r2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure stopped before meeting its tolerance. Carries the
/// best estimate reached so callers can still report it.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double best_estimate, double error_bound)
      : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// Expression or config parse failure. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Quantity undefined because the manifold is p-parabolic (zero capacity, no potential).
class ParabolicError : public Error {
 public:
  using Error::Error;
};

/// Post-condition or paper bound violated by a computed value.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace asygeo
