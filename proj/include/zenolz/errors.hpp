// errors.hpp — exception families and the exit codes the CLI maps them to.

#pragma once

#include <stdexcept>
#include <string>

namespace zenolz {

// One exit code per error family. Library code throws; tools/zenolz.cpp maps.
enum class ExitCode : int {
  ok = 0,
  failure = 1,      // unclassified
  config = 2,       // config parse / validation
  domain = 3,       // argument outside an operation's stated domain
  capacity = 4,     // exact solver dimension cap
  infeasible = 5,   // no solution in the search range
  integration = 6,  // ODE step-size underflow or conservation breach
  invariant = 7,    // state violates a module invariant
  io = 8,
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Carries the best value reached before the search gave up.
struct InfeasibleError : std::runtime_error {
  double best_achieved;
  InfeasibleError(const std::string& what, double best)
      : std::runtime_error(what), best_achieved(best) {}
};

// Carries the last time the integrator had a valid state.
struct IntegrationError : std::runtime_error {
  double last_valid_time;
  IntegrationError(const std::string& what, double t_last)
      : std::runtime_error(what), last_valid_time(t_last) {}
};

inline ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return ExitCode::domain;
  if (dynamic_cast<const CapacityError*>(&e)) return ExitCode::capacity;
  if (dynamic_cast<const InfeasibleError*>(&e)) return ExitCode::infeasible;
  if (dynamic_cast<const IntegrationError*>(&e)) return ExitCode::integration;
  if (dynamic_cast<const InvariantError*>(&e)) return ExitCode::invariant;
  if (dynamic_cast<const IoError*>(&e)) return ExitCode::io;
  return ExitCode::failure;
}

}  // namespace zenolz
