#include "wrc/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "wrc/error.hpp"
#include "wrc/numerics.hpp"

namespace wrc {

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::zero: return "zero";
    case WeightKind::gradient: return "gradient";
    case WeightKind::radial_field: return "radial_field";
  }
  return "?";
}

const char* to_string(FarEnd end) {
  switch (end) {
    case FarEnd::truncated: return "truncated";
    case FarEnd::two_pole: return "two_pole";
    case FarEnd::singular: return "singular";
  }
  return "?";
}

WeightedModel::WeightedModel(ModelSpec spec) : spec_(std::move(spec)) {
  validate();
  rate_ = spec_.params.conformal_rate();

  if (spec_.weight.kind == WeightKind::gradient) f_at_p_ = (*spec_.weight.fn)(0.0).v;
  CpMode mode = spec_.cp ? *spec_.cp
                         : (spec_.weight.kind == WeightKind::gradient ? CpMode{GradientCp{}}
                                                                      : CpMode{FreeCp{1.0}});
  if (std::holds_alternative<GradientCp>(mode) && spec_.weight.kind == WeightKind::radial_field) {
    throw Error(ErrorKind::invalid_model, "gradient c_p requires a gradient or zero weight");
  }
  c_p_ = base_point_constant(spec_.params, f_at_p_, mode);

  auto rhs = [this](double t, const ode::State<2>& y) {
    const double F = spec_.weight.kind == WeightKind::radial_field ? y[0] : f_vp(t);
    return ode::State<2>{a(t), c_p_ * std::exp(-rate_ * F)};
  };
  ode::Options opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-15;
  opt.h_max = spec_.t_max / 64.0;
  ray_ = std::make_shared<const ode::DenseSolution<2>>(
      ode::integrate_dense<2>(rhs, 0.0, {0.0, 0.0}, spec_.t_max, opt));
  tau_v_ = ray_->segments().back().back()[1];
}

void WeightedModel::validate() {
  const auto& p = spec_.params;
  const double T = spec_.t_max;
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw Error(ErrorKind::invalid_model, "t_max must be positive and finite");
  }
  if (spec_.weight.kind != WeightKind::zero && !spec_.weight.fn) {
    throw Error(ErrorKind::invalid_model, "weight function missing");
  }
  if (p.requires_zero_V) {
    // a constant density is allowed: V = grad f still vanishes
    bool vanishes = spec_.weight.kind != WeightKind::radial_field && !spec_.killing_tangential;
    if (vanishes && spec_.weight.kind == WeightKind::gradient) {
      for (double t : linspace(0.0, T, 257)) {
        const Jet f = (*spec_.weight.fn)(t);
        vanishes = vanishes && f.d1 == 0.0 && f.d2 == 0.0;
      }
    }
    if (!vanishes) throw Error(ErrorKind::invalid_model, "N = n requires a vanishing vector field");
  }

  const Jet p0 = spec_.phi(0.0);
  if (std::abs(p0.v) > 1e-8 || std::abs(p0.d1 - 1.0) > 1e-6) {
    throw Error(ErrorKind::invalid_model, "phi must satisfy phi(0) = 0, phi'(0) = 1");
  }
  for (double t : linspace(0.0, T, 1001)) {
    if (t == 0.0 || t == T) continue;
    if (!(spec_.phi(t).v > 0.0)) {
      std::ostringstream os;
      os << "phi vanishes in the interior at t = " << t;
      throw Error(ErrorKind::invalid_model, os.str());
    }
  }
  if (spec_.far_end != FarEnd::truncated) {
    const Jet pT = spec_.phi(T);
    if (std::abs(pT.v) > 1e-6) {
      throw Error(ErrorKind::invalid_model, "closed model needs phi(t_max) = 0");
    }
    if (spec_.far_end == FarEnd::two_pole && std::abs(pT.d1 + 1.0) > 1e-6) {
      throw Error(ErrorKind::invalid_model, "two-pole model needs phi'(t_max) = -1");
    }
  }

  if (spec_.weight.kind == WeightKind::gradient && std::abs((*spec_.weight.fn)(0.0).d1) > 1e-10) {
    warnings_.push_back("gradient weight has f'(0) != 0: f is not smooth at the pole");
  }
  if (spec_.weight.kind == WeightKind::radial_field && std::abs((*spec_.weight.fn)(0.0).v) > 1e-10) {
    warnings_.push_back("radial field has a(0) != 0: V is not smooth at the pole");
  }
  if (spec_.far_end == FarEnd::two_pole) {
    for (double t : linspace(0.0, 0.5 * T, 257)) {
      if (spec_.phi(t).d1 < -1e-10) {
        warnings_.push_back(
            "phi is not monotone on the first half; f_Vp uses the radial geodesic from p only");
        break;
      }
    }
  }
}

void WeightedModel::require_on_ray(double t) const {
  if (t < 0.0 || t > spec_.t_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "t = " << t << " outside [0, t_max]";
    throw Error(ErrorKind::domain_error, os.str());
  }
}

double WeightedModel::a(double t) const {
  switch (spec_.weight.kind) {
    case WeightKind::zero: return 0.0;
    case WeightKind::gradient: return (*spec_.weight.fn)(t).d1;
    case WeightKind::radial_field: return (*spec_.weight.fn)(t).v;
  }
  return 0.0;
}

double WeightedModel::a_prime(double t) const {
  switch (spec_.weight.kind) {
    case WeightKind::zero: return 0.0;
    case WeightKind::gradient: return (*spec_.weight.fn)(t).d2;
    case WeightKind::radial_field: return (*spec_.weight.fn)(t).d1;
  }
  return 0.0;
}

double WeightedModel::f_vp(double t) const {
  switch (spec_.weight.kind) {
    case WeightKind::zero: return 0.0;
    case WeightKind::gradient: return (*spec_.weight.fn)(t).v - f_at_p_;
    case WeightKind::radial_field:
      require_on_ray(t);
      return (*ray_)(std::min(t, spec_.t_max))[0];
  }
  return 0.0;
}

double WeightedModel::density(double t) const {
  if (spec_.weight.kind == WeightKind::gradient) return (*spec_.weight.fn)(t).v;
  return f_vp(t);
}

double WeightedModel::conformal_factor(double t) const {
  return c_p_ * std::exp(-rate_ * f_vp(t));
}

double WeightedModel::s_v(double t) const {
  require_on_ray(t);
  return (*ray_)(std::min(t, spec_.t_max))[1];
}

double WeightedModel::t_v(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= tau_v_) return spec_.t_max;
  const auto& segs = ray_->segments();
  auto it = std::lower_bound(segs.begin(), segs.end(), s,
                             [](const ode::Segment<2>& seg, double x) { return seg.back()[1] < x; });
  if (it == segs.end()) it = std::prev(segs.end());
  const auto& seg = *it;
  double lo = seg.t0, hi = seg.t1();
  double t = lo + (hi - lo) * std::clamp((s - seg.front()[1]) / (seg.back()[1] - seg.front()[1]), 0.0, 1.0);
  for (int iter = 0; iter < 60; ++iter) {
    const double g = seg.at(t)[1] - s;
    if (g > 0.0) hi = t; else lo = t;
    if (std::abs(g) <= 1e-16 * std::max(1.0, s)) return t;
    double next = t - g / conformal_factor(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, t)) return next;
    t = next;
  }
  return t;
}

double WeightedModel::ric_radial(double t) const {
  double te = std::max(t, 1e-8 * spec_.t_max);
  if (spec_.far_end != FarEnd::truncated) te = std::min(te, spec_.t_max * (1.0 - 1e-8));
  const Jet ph = spec_.phi(te);
  const double aa = a(t);
  return -(n() - 1) * ph.d2 / ph.v + a_prime(t) - spec_.params.field_square_coeff() * aa * aa;
}

double WeightedModel::ric_tangential(double t) const {
  if (spec_.killing_tangential) {
    throw Error(ErrorKind::unsupported,
                "tangential curvature with a Killing part of unknown size is not available");
  }
  const double T = spec_.t_max;
  double te = std::max(t, 1e-8 * T);
  const bool far_pole = spec_.far_end == FarEnd::two_pole && T - te < kPoleSeriesSwitch;
  if (far_pole) te = std::min(te, T * (1.0 - 1e-8));
  const Jet ph = spec_.phi(te);
  const double aa = a(te);
  if (te < kPoleSeriesSwitch || far_pole) {
    // (1 - phi'^2)/phi^2 -> -phi''/phi at a smooth pole
    return -(n() - 1) * ph.d2 / ph.v + aa * ph.d1 / ph.v;
  }
  return -ph.d2 / ph.v + (n() - 2) * (1.0 - ph.d1 * ph.d1) / (ph.v * ph.v) + aa * ph.d1 / ph.v;
}

double WeightedModel::laplacian(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::domain_error, "the Laplacian of d_p needs t > 0");
  const Jet ph = spec_.phi(t);
  return (n() - 1) * ph.d1 / ph.v - a(t);
}

double WeightedModel::theta(double t) const {
  return std::pow(std::max(spec_.phi(t).v, 0.0), n() - 1);
}

double WeightedModel::theta_v(double t) const { return std::exp(-f_vp(t)) * theta(t); }

double WeightedModel::theta_hat(double s) const {
  if (s < 0.0 || s >= tau_v_) return 0.0;
  return theta_v(t_v(s));
}

double WeightedModel::nu_ball(double r) const {
  if (r <= 0.0) return 0.0;
  // substitute s = s_V(t): d s = c_p e^{-k f_vp} dt
  const double t_end = t_v(std::min(r, tau_v_));
  const double w = unit_sphere_volume(n());
  return w * integrate([this](double t) { return theta_v(t) * conformal_factor(t); }, 0.0, t_end,
                       1e-12);
}

double WeightedModel::mu_ball(double r) const {
  if (r <= 0.0) return 0.0;
  const double w = unit_sphere_volume(n());
  return w * integrate([this](double t) { return theta_v(t); }, 0.0, std::min(r, spec_.t_max), 1e-12);
}

RayWeight ray_weight(const WeightedModel& model, const std::vector<double>& t_grid) {
  RayWeight out;
  out.f_vp.reserve(t_grid.size());
  out.a.reserve(t_grid.size());
  for (double t : t_grid) {
    out.f_vp.push_back(model.f_vp(t));
    out.a.push_back(model.a(t));
  }
  return out;
}

Reparametrization reparametrize(const WeightedModel& model, const std::vector<double>& t_grid) {
  Reparametrization out;
  for (double t : t_grid) out.s_v.push_back(model.s_v(t));
  out.t_v = [&model](double s) { return model.t_v(s); };
  out.tau_v = model.tau_v();
  return out;
}

std::vector<double> curvature_radial(const WeightedModel& model, const std::vector<double>& t_grid) {
  std::vector<double> out;
  for (double t : t_grid) out.push_back(model.ric_radial(t));
  return out;
}

std::vector<double> curvature_tangential(const WeightedModel& model,
                                         const std::vector<double>& t_grid) {
  std::vector<double> out;
  for (double t : t_grid) out.push_back(model.ric_tangential(t));
  return out;
}

std::vector<double> weighted_laplacian(const WeightedModel& model,
                                       const std::vector<double>& t_grid) {
  std::vector<double> out;
  for (double t : t_grid) out.push_back(model.laplacian(t));
  return out;
}

VolumeData volume_data(const WeightedModel& model, const std::vector<double>& t_grid) {
  VolumeData out;
  for (double t : t_grid) out.theta_v.push_back(model.theta_v(t));
  // the closures own a copy so the result may outlive the argument
  const auto m = std::make_shared<const WeightedModel>(model);
  out.theta_hat = [m](double s) { return m->theta_hat(s); };
  out.nu_ball = [m](double r) { return m->nu_ball(r); };
  out.mu_ball = [m](double r) { return m->mu_ball(r); };
  return out;
}

double conformal_distance(const WeightedModel& model, double t) { return model.s_v(t); }

}  // namespace wrc
