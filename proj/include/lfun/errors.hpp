#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfun {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative method (quadrature refinement, Newton) gave up. Carries the
/// last iterates so the caller can see how far it got.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Malformed or unusable configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A kernel variant was asked for something it cannot provide.
class KernelError : public Error {
 public:
  using Error::Error;
};

/// The Dirichlet coefficient list ran out before the series tail bound was met.
class InsufficientCoefficients : public Error {
 public:
  InsufficientCoefficients(std::size_t available, std::size_t required)
      : Error("insufficient coefficients: have " + std::to_string(available) + ", need N = " +
              std::to_string(required)),
        available_(available),
        required_(required) {}
  std::size_t available() const { return available_; }
  std::size_t required() const { return required_; }

 private:
  std::size_t available_;
  std::size_t required_;
};

}  // namespace lfun
