#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace focklab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at position " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(std::string name)
      : Error("unknown identifier '" + name + "' (only 'r' and 'exp' are allowed)"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NonPositiveValue : public Error {
 public:
  explicit NonPositiveValue(double r)
      : Error("expression is not strictly positive at r = " + std::to_string(r)), r_(r) {}
  double radius() const noexcept { return r_; }

 private:
  double r_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class NonPositiveLaplacian : public Error {
 public:
  explicit NonPositiveLaplacian(double r)
      : Error("Laplacian of the weight is not positive at r = " + std::to_string(r)), r_(r) {}
  double radius() const noexcept { return r_; }

 private:
  double r_;
};

class DivergentIntegral : public Error {
 public:
  DivergentIntegral(double radius_cap, double tail_slope)
      : Error("integral does not converge within radius cap " + std::to_string(radius_cap) +
              " (log-log tail slope " + std::to_string(tail_slope) + ")"),
        radius_cap_(radius_cap),
        tail_slope_(tail_slope) {}
  double radius_cap() const noexcept { return radius_cap_; }
  double tail_slope() const noexcept { return tail_slope_; }

 private:
  double radius_cap_;
  double tail_slope_;
};

class RegionTooLarge : public Error {
 public:
  RegionTooLarge(double estimated, double budget)
      : Error("covering needs about " + std::to_string(static_cast<long long>(estimated)) +
              " points, over the budget of " + std::to_string(static_cast<long long>(budget))),
        estimated_(estimated) {}
  double estimated() const noexcept { return estimated_; }

 private:
  double estimated_;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace focklab
