#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wrc {

enum class ErrorKind {
  range_violation,
  non_positive,
  solver_failure,
  domain_error,
  unsupported,
  invalid_model,
  construction_failure,
  config_error,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range_violation: return "RangeViolation";
    case ErrorKind::non_positive: return "NonPositive";
    case ErrorKind::solver_failure: return "SolverFailure";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::unsupported: return "Unsupported";
    case ErrorKind::invalid_model: return "InvalidModel";
    case ErrorKind::construction_failure: return "ConstructionFailure";
    case ErrorKind::config_error: return "ConfigError";
  }
  return "Error";
}

}  // namespace wrc
