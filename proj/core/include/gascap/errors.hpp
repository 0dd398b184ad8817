#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace gascap {

/// Bad argument or precondition violation supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the physical domain of a formula (e.g. a boson
/// fugacity at or above the condensation bound).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to meet its tolerance or the requested
/// state cannot be reached on the given spectrum.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double residual = 0.0,
                          std::optional<double> temperature = std::nullopt)
      : std::runtime_error(what), residual_(residual), temperature_(temperature) {}

  double residual() const noexcept { return residual_; }
  std::optional<double> temperature() const noexcept { return temperature_; }

 private:
  double residual_;
  std::optional<double> temperature_;
};

}  // namespace gascap
