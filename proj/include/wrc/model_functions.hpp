#pragma once

#include <memory>

#include "wrc/kappa.hpp"
#include "wrc/ode.hpp"

namespace wrc {

/// Solution of psi'' + kappa psi = 0, psi(0) = 0, psi'(0) = 1 on [0, domain_max]
/// together with its first positive zero C_kappa. Immutable after construction.
class ModelFunctions {
 public:
  ModelFunctions(KappaProfile kappa, double c, double domain_max,
                 std::shared_ptr<const ode::DenseSolution<2>> sol, double c_kappa);

  double s_kappa(double s) const;
  double ds_kappa(double s) const;
  /// Truncated model function: exact zero for s >= C_kappa.
  double s_kappa_bar(double s) const;

  double C_kappa() const { return c_kappa_; }
  bool has_finite_zero() const;
  double c() const { return c_; }
  double domain_max() const { return domain_max_; }
  const KappaProfile& kappa() const { return kappa_; }

 private:
  void require_in_domain(double s) const;

  KappaProfile kappa_;
  double c_;
  double domain_max_;
  std::shared_ptr<const ode::DenseSolution<2>> sol_;
  double c_kappa_;
};

struct DerivedValues {
  double cot_kappa = 0.0;
  double H_kappa = 0.0;
};

inline constexpr double kSeriesSwitch = 1e-4;

/// Domain sized to capture C_kappa for a positive lower bound, else `fallback`.
double default_domain_max(const KappaProfile& kappa, double fallback);

ModelFunctions solve_model(const KappaProfile& kappa, double c, double domain_max);

/// cot_kappa = s'/s and H_kappa = cot_kappa / c on ]0, C_kappa[.
DerivedValues eval_derived(const ModelFunctions& mf, double s);

/// S_kappa(r) = int_0^r s_bar^{1/c}.
double model_volume(const ModelFunctions& mf, double r);

/// kappa(s) = kappa(C - s) and s_kappa(s) = s_kappa(C - s) on a probe grid.
bool check_symmetry(const ModelFunctions& mf, double tol = 1e-8);

}  // namespace wrc
