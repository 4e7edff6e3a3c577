#pragma once

#include <stdexcept>
#include <string>

namespace trisplit {

/// Malformed or inconsistent problem/run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vectors or operators with incompatible sizes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A filter quotient that is not removable at the requested argument.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, double z) : std::domain_error(what), z_(z) {}
  double argument() const noexcept { return z_; }

 private:
  double z_;
};

/// Fewer usable data points than an estimator needs.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trisplit
