#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mapflock {

// Raised when a numeric argument falls outside the domain of a function
// (negative cutoffs, epsilon <= 0, ...).
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or unreadable scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (wrong goal kind, dead MAP, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(std::int64_t step, const std::string& what)
      : std::runtime_error("simulation diverged at step " + std::to_string(step) + ": " + what),
        step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace mapflock
