#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrc/config.hpp"

namespace wrc {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes of `wrc check`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolated = 2;

struct RunOutcome {
  int exit_code = kExitOk;
  /// {"canonical": ..., "timing": ...}; the canonical part is a pure function of config and build.
  nlohmann::ordered_json report;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // violated verdicts and unmet expectations
  /// file name -> CSV content
  std::map<std::string, std::string> csv;
};

/// Builds the model, runs the requested checks and assembles the report.
/// Library errors propagate to the caller.
RunOutcome run_checks(const RunConfig& cfg);

/// Writes the report and CSV files (each atomically, via a temporary and a rename).
void write_outputs(const RunOutcome& out, const std::optional<std::string>& report_path,
                   const std::optional<std::string>& csv_dir);

void write_file_atomic(const std::string& path, const std::string& content);

/// Shortest round-trip decimal.
std::string format_number(double x);

nlohmann::ordered_json to_json(const CheckResult& r);
nlohmann::ordered_json to_json(const RigidityReport& r);
nlohmann::ordered_json to_json(const CompactnessReport& r);

std::string check_csv(const CheckResult& r);
std::string curve_csv(const Curve& c);

/// Uniform-grid dump of the model functions with header
/// s,s_kappa,ds_kappa,cot_kappa,H_kappa,S_kappa.
std::string model_functions_csv(const KappaProfile& kappa, double c, double s_max, double step);

}  // namespace wrc
