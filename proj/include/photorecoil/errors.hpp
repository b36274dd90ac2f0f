#pragma once

#include <stdexcept>
#include <string>

namespace photorecoil {

// Argument outside the mathematical domain of an operation (x < 0, |v| >= c).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// sigma = 0 and similar single-mode limits that the closed forms exclude.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or ODE relaxation ran out of budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration. `key` names the offending
// entry when one is known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace photorecoil
