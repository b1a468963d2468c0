#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrc/compactness.hpp"
#include "wrc/comparison.hpp"
#include "wrc/rigidity.hpp"

namespace wrc {

/// Every check the runner knows, in report order.
const std::vector<std::string>& known_checks();

/// How the model is obtained: an explicit warped product, or one of the
/// equality constructions.
enum class ModelSource { explicit_model, equality, bounded_density };

struct KappaRequest {
  /// constant | sampled | trig | linear | admissible
  std::string kind = "constant";
  std::optional<KappaProfile> profile;  // all kinds but admissible
  HypothesisMode admissible_mode = HypothesisMode::full;
  double admissible_safety = 1e-6;
};

struct RunConfig {
  std::string name;
  EpsParams params;
  ModelSource source = ModelSource::explicit_model;
  std::optional<ModelSpec> model;          // explicit_model
  std::optional<EqualityBuild> equality;   // equality (params and kappa filled in later)
  KappaRequest kappa;
  std::vector<std::string> checks;
  std::optional<double> delta;
  std::vector<double> radii;
  Tolerances tol;
  /// check name -> expected verdict / status string
  std::map<std::string, std::string> expect;
  CompactnessCertificates certificates;
  std::optional<std::string> report_path;
  std::optional<std::string> csv_dir;
  /// The input with defaults filled in.
  nlohmann::ordered_json resolved;
};

/// Validates and converts; throws Error(config_error) with a path such as
/// `model.weight.f.alpha` on the first problem, and lets RangeViolation from
/// the (n, N, eps) validation through.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// --tol NAME=VALUE
void apply_tolerance_override(RunConfig& cfg, const std::string& assignment);

/// Parses a kappa spec; the CLI form is "constant:1", "linear:base,slope",
/// "trig:base,amp,freq,phase" or "sampled:FILE.csv".
KappaProfile parse_kappa_spec(const std::string& spec);

enum class FunctionRole { warping, density, field };
RadialFunction parse_radial_function(const nlohmann::json& j, const std::string& path,
                                     FunctionRole role);

}  // namespace wrc
