#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wrc/spline.hpp"

namespace wrc {

/// A function of the radial coordinate returning value, first and second
/// derivative jointly. Analytic families carry their name and parameters so
/// that reports and tail certificates can refer to them.
class RadialFunction {
 public:
  using Eval = std::function<Jet(double)>;

  RadialFunction(std::string family, std::map<std::string, double> params, Eval eval);

  /// Clamped cubic spline through (t_i, v_i); its second derivative is the model's truth.
  static RadialFunction sampled(std::vector<double> t, std::vector<double> values,
                                double slope_begin, double slope_end);

  Jet operator()(double t) const { return eval_(t); }
  const std::string& family() const { return family_; }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& key) const { return params_.at(key); }

 private:
  std::string family_;
  std::map<std::string, double> params_;
  Eval eval_;
};

namespace families {

// warping functions
RadialFunction sphere(double R);
RadialFunction euclidean();
RadialFunction hyperbolic(double R);
/// R (sin(t/R) + eta sin^3(t/R)); smooth at both poles.
RadialFunction perturbed_sphere(double R, double eta);

// densities f
RadialFunction zero_density();
RadialFunction constant_density(double value);
RadialFunction linear_density(double slope);        // slope t
RadialFunction quadratic_density(double alpha);     // alpha t^2 / 2
RadialFunction log1p_density(double alpha);         // alpha ln(1 + t)
RadialFunction sin2_density(double amp, double freq);  // amp sin^2(freq t)

// radial vector-field components a = g(V, d/dt)
RadialFunction sin_field(double amp);     // amp sin t
RadialFunction linear_field(double alpha);  // alpha t

}  // namespace families

}  // namespace wrc
