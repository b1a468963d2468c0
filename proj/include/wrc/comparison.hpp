#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wrc/kappa.hpp"
#include "wrc/kernels.hpp"
#include "wrc/model_functions.hpp"
#include "wrc/model_space.hpp"

namespace wrc {

enum class Verdict { holds, violated, vacuous };
const char* to_string(Verdict v);

struct Tolerances {
  double check_tol = 1e-6;  // slack sign
  double eq_tol = 1e-7;     // equality locus
  std::size_t probes = 400;
  std::size_t pair_probes = 200;
  std::size_t radii_probes = 50;
  Exec exec = Exec::parallel;
};

struct Curve {
  std::string name;
  std::string x_name;
  std::vector<double> x, y;
};

/// Slack >= 0 means the inequality holds at that probe.
struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::vacuous;
  bool hypothesis_verified = false;
  std::string probe_variable = "t";
  std::vector<double> probes;
  std::vector<double> slack;
  std::vector<double> equality_locus;
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  std::map<std::string, double> values;
  std::vector<std::string> notes;
  std::vector<Curve> curves;

  bool equality_everywhere() const { return !probes.empty() && equality_locus.size() == probes.size(); }
};

enum class HypothesisMode { radial, full };

/// A model paired with a lower-bound profile. Solves the model functions on a
/// domain that covers tau_V and the requested radii, and evaluates the
/// curvature hypothesis once. Immutable after construction.
class Scenario {
 public:
  Scenario(WeightedModel model, KappaProfile kappa, Tolerances tol = {}, double radius_hint = 0.0);

  const WeightedModel& model() const { return model_; }
  const KappaProfile& kappa() const { return kappa_; }
  const ModelFunctions& mf() const { return *mf_; }
  const Tolerances& tol() const { return tol_; }

  /// Interior probes of ]0, t_max[: Chebyshev nodes plus geometric refinement at the poles.
  std::vector<double> t_probes() const;
  /// Chebyshev probes of ]0, hi[ in the re-parametrised variable.
  std::vector<double> s_probes(double hi, std::size_t count) const;

  const CheckResult& hypothesis_radial() const { return hyp_radial_; }
  /// Empty when the tangential curvature is unavailable (Killing part flagged).
  const std::optional<CheckResult>& hypothesis_full() const { return hyp_full_; }
  bool hypothesis_holds() const { return hyp_radial_.verdict == Verdict::holds; }
  /// Full-tensor verdict when available, radial otherwise.
  bool tensor_hypothesis_holds() const;

  /// c^{-1} c_p^2 kappa(s_V(t)) e^{-4(1-eps) f_Vp(t)/(n-1)}
  double curvature_bound(double t) const;

 private:
  WeightedModel model_;
  KappaProfile kappa_;
  Tolerances tol_;
  std::shared_ptr<const ModelFunctions> mf_;
  CheckResult hyp_radial_;
  std::optional<CheckResult> hyp_full_;
};

CheckResult check_hypothesis(const Scenario& sc, HypothesisMode mode);
CheckResult check_riccati(const Scenario& sc);
CheckResult check_laplacian(const Scenario& sc);
CheckResult check_cut_value(const Scenario& sc);
CheckResult check_bounded_density(const Scenario& sc, double delta);
/// delta, when given, adds the bounded-density bound sup d_p <= C_{kappa e^{-4 delta}}.
CheckResult check_diameter(const Scenario& sc, std::optional<double> delta = std::nullopt);
CheckResult check_volume_element(const Scenario& sc);
CheckResult check_bishop_gromov(const Scenario& sc, const std::vector<double>& radii);

/// Margin samples G(s) = s_kappa(s)^2 (F_hat(s) - H_kappa(s)) on ]0, min(tau_V, C_kappa)[.
Curve margin_g(const Scenario& sc);

/// Largest constant kappa for which the curvature hypothesis holds on the
/// model, shrunk by `safety` (relative) towards the admissible side.
double max_admissible_constant_kappa(const WeightedModel& model, HypothesisMode mode,
                                     double safety = 1e-6);

/// Verdict and summary fields from the slack samples.
void finalize(CheckResult& r, const Tolerances& tol);

}  // namespace wrc
