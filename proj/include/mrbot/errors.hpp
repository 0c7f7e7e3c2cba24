#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace mrbot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed centerline input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Too few points, coincident points, non-positive radii.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Path parameter outside [a, b]; the spline never extrapolates.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Tangent too short for the curvature formula.
class SingularCurvatureError : public Error {
 public:
  using Error::Error;
};

// Non-finite force or state during integration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value. `field()` is the dotted config key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mrbot
