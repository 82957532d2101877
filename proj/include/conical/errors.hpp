#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conical {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct ZeroTraceError : Error {
  using Error::Error;
};
struct NotADesignError : Error {
  using Error::Error;
};
struct NoDecompositionError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

/// Carries the list of violated P_m membership conditions.
class InvalidProjectorError : public Error {
 public:
  InvalidProjectorError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Raised when no known construction reaches the contraction a caller needs.
class ConstructionUnavailableError : public Error {
 public:
  ConstructionUnavailableError(const std::string& what, double required, double available)
      : Error(what), required_(required), available_(available) {}
  double required_kappa() const { return required_; }
  double available_kappa() const { return available_; }

 private:
  double required_;
  double available_;
};

}  // namespace conical
