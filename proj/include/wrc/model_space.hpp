#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wrc/ode.hpp"
#include "wrc/parameters.hpp"
#include "wrc/radial_function.hpp"

namespace wrc {

enum class WeightKind { zero, gradient, radial_field };

/// How the ray ends at t = T_max.
///   truncated: an infinite model cut off at T_max (sups are lower estimates)
///   two_pole:  a smooth second pole, phi(T) = 0 and phi'(T) = -1
///   singular:  phi(T) = 0 without the smoothness condition
enum class FarEnd { truncated, two_pole, singular };

const char* to_string(WeightKind kind);
const char* to_string(FarEnd end);

struct Weight {
  WeightKind kind = WeightKind::zero;
  std::optional<RadialFunction> fn;  // f for gradient, a = g(V, d/dt) for radial_field

  static Weight zero() { return {}; }
  static Weight gradient(RadialFunction f) { return {WeightKind::gradient, std::move(f)}; }
  static Weight radial_field(RadialFunction a) { return {WeightKind::radial_field, std::move(a)}; }
};

struct ModelSpec {
  RadialFunction phi;
  Weight weight;
  EpsParams params;
  double t_max = 0.0;
  FarEnd far_end = FarEnd::truncated;
  bool killing_tangential = false;
  /// Defaults to gradient mode for gradient weights and to c_p = 1 otherwise.
  std::optional<CpMode> cp;
};

/// Rotationally symmetric weighted manifold dt^2 + phi(t)^2 g_{S^{n-1}} with
/// pole p at t = 0. Everything along-ray is evaluated on the radial geodesic
/// from p. Immutable after construction.
class WeightedModel {
 public:
  explicit WeightedModel(ModelSpec spec);

  int n() const { return spec_.params.n; }
  const EpsParams& params() const { return spec_.params; }
  const ModelSpec& spec() const { return spec_; }
  double c_p() const { return c_p_; }
  double t_max() const { return spec_.t_max; }
  FarEnd far_end() const { return spec_.far_end; }
  bool truncated() const { return spec_.far_end == FarEnd::truncated; }
  WeightKind weight_kind() const { return spec_.weight.kind; }
  bool killing_tangential() const { return spec_.killing_tangential; }
  const RadialFunction& phi() const { return spec_.phi; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  Jet phi_jet(double t) const { return spec_.phi(t); }
  /// g(V, gamma') and its derivative.
  double a(double t) const;
  double a_prime(double t) const;
  /// f_{V,p} along the ray: f - f(p) or the integral of a.
  double f_vp(double t) const;
  /// The density itself in gradient mode (f, not f - f(p)); f_vp otherwise.
  double density(double t) const;

  /// c_p e^{-k f_vp}: derivative of s_V and conformal factor of g_{V,p}.
  double conformal_factor(double t) const;
  double s_v(double t) const;
  double t_v(double s) const;
  double tau_v() const { return tau_v_; }

  double ric_radial(double t) const;
  /// Unsupported when a Killing tangential part is flagged (its size is unknown).
  double ric_tangential(double t) const;
  double laplacian(double t) const;

  double theta(double t) const;
  double theta_v(double t) const;
  /// theta_V(t_V(s)), extended by 0 past tau_V.
  double theta_hat(double s) const;
  double nu_ball(double r) const;
  double mu_ball(double r) const;

 private:
  void validate();
  void require_on_ray(double t) const;

  ModelSpec spec_;
  double c_p_ = 1.0;
  double f_at_p_ = 0.0;
  double rate_ = 0.0;
  double tau_v_ = 0.0;
  std::shared_ptr<const ode::DenseSolution<2>> ray_;  // (f_vp, s_V)
  std::vector<std::string> warnings_;
};

inline constexpr double kPoleSeriesSwitch = 1e-4;

// Grid-level views of the along-ray data (serial; see kernels.hpp for the
// parallel sampler).

struct RayWeight {
  std::vector<double> f_vp, a;
};
RayWeight ray_weight(const WeightedModel& model, const std::vector<double>& t_grid);

struct Reparametrization {
  std::vector<double> s_v;
  std::function<double(double)> t_v;
  double tau_v = 0.0;
};
Reparametrization reparametrize(const WeightedModel& model, const std::vector<double>& t_grid);

std::vector<double> curvature_radial(const WeightedModel& model, const std::vector<double>& t_grid);
std::vector<double> curvature_tangential(const WeightedModel& model,
                                         const std::vector<double>& t_grid);
std::vector<double> weighted_laplacian(const WeightedModel& model,
                                       const std::vector<double>& t_grid);

struct VolumeData {
  std::vector<double> theta_v;
  std::function<double(double)> theta_hat;
  std::function<double(double)> nu_ball;
  std::function<double(double)> mu_ball;
};
VolumeData volume_data(const WeightedModel& model, const std::vector<double>& t_grid);

double conformal_distance(const WeightedModel& model, double t);

}  // namespace wrc
