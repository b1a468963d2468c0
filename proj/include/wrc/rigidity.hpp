#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wrc/comparison.hpp"

namespace wrc {

enum class RigidityCaseKind { N_eq_n, N_eq_1, N_other };
const char* to_string(RigidityCaseKind k);

struct RigidityCase {
  RigidityCaseKind kind = RigidityCaseKind::N_eq_n;
  double eps = 0.0;
  std::string weight_structure;
  std::string warping_law;
};

/// Which case applies to the parameters (N = n, N = 1 or anything else).
RigidityCaseKind case_for(const EpsParams& params);

struct EqualityBuild {
  RigidityCaseKind kind = RigidityCaseKind::N_eq_n;
  int n = 3;
  ExtendedN N = ExtendedN::finite(3.0);
  double eps = 0.0;
  KappaProfile kappa = KappaProfile::constant(1.0);
  /// N_eq_1 only: the density, either as f(t) or as F(s) with f = F o s_V.
  std::optional<RadialFunction> f;
  bool f_in_s = false;
  /// c_p for zero weights (gradient weights use the gradient value).
  double cp = 1.0;
  bool killing_tangential = false;
  /// Ray length when the model does not close up (C_kappa = +inf).
  double t_max = 10.0;
};

/// Warped product realising the equality case; throws ConstructionFailure
/// when the result is not regular at the pole.
WeightedModel build_equality_model(const EqualityBuild& b);

/// f = (n-1) delta / (1 - eps), phi = e^{2 delta} s_kappa(e^{-2 delta} t).
WeightedModel build_bounded_density_model(int n, ExtendedN N, double eps, const KappaProfile& kappa,
                                          double delta);

/// Warping law of a case evaluated at t: c_p^{-1} e^{f_Vp/(n-1)} s_kappa(s_V(t)) for N = 1
/// and c_p^{-1} s_kappa(c_p t) otherwise.
double warping_law(const WeightedModel& m, const ModelFunctions& mf, RigidityCaseKind kind,
                   double t);

enum class RigidityStatus { classified, declined, not_maximal, vacuous };
const char* to_string(RigidityStatus s);

struct RigidityReport {
  std::string name;
  RigidityStatus status = RigidityStatus::vacuous;
  std::optional<RigidityCase> rigidity_case;
  CheckResult check;
  std::vector<std::string> notes;
  std::map<std::string, double> values;
  /// Bounded-density classification, present when delta was supplied.
  std::optional<RigidityStatus> bounded_density_status;
};

RigidityReport check_max_diameter(const Scenario& sc, std::optional<double> delta = std::nullopt);
RigidityReport check_volume_growth_rigidity(const Scenario& sc, const std::vector<double>& radii);

}  // namespace wrc
