#include "wrc/radial_function.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "wrc/error.hpp"

namespace wrc {

RadialFunction::RadialFunction(std::string family, std::map<std::string, double> params, Eval eval)
    : family_(std::move(family)), params_(std::move(params)), eval_(std::move(eval)) {}

RadialFunction RadialFunction::sampled(std::vector<double> t, std::vector<double> values,
                                       double slope_begin, double slope_end) {
  auto spline = std::make_shared<const CubicSpline>(std::move(t), std::move(values), slope_begin,
                                                    slope_end, CubicSpline::Beyond::extrapolate);
  return RadialFunction("sampled",
                        {{"nodes", static_cast<double>(spline->nodes().size())},
                         {"slope_begin", slope_begin},
                         {"slope_end", slope_end}},
                        [spline](double x) { return (*spline)(x); });
}

namespace families {

RadialFunction sphere(double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::invalid_model, "sphere radius must be positive");
  return RadialFunction("sphere", {{"R", R}}, [R](double t) {
    const double s = std::sin(t / R), c = std::cos(t / R);
    return Jet{R * s, c, -s / R};
  });
}

RadialFunction euclidean() {
  return RadialFunction("euclidean", {}, [](double t) { return Jet{t, 1.0, 0.0}; });
}

RadialFunction hyperbolic(double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::invalid_model, "hyperbolic radius must be positive");
  return RadialFunction("hyperbolic", {{"R", R}}, [R](double t) {
    const double s = std::sinh(t / R), c = std::cosh(t / R);
    return Jet{R * s, c, s / R};
  });
}

RadialFunction perturbed_sphere(double R, double eta) {
  if (!(R > 0.0)) throw Error(ErrorKind::invalid_model, "sphere radius must be positive");
  return RadialFunction("perturbed-sphere", {{"R", R}, {"eta", eta}}, [R, eta](double t) {
    const double x = t / R;
    const double s = std::sin(x), c = std::cos(x);
    // d/dx sin^3 = 3 s^2 c, d2/dx2 sin^3 = 6 s c^2 - 3 s^3
    return Jet{R * (s + eta * s * s * s), c + eta * 3.0 * s * s * c,
               (-s + eta * (6.0 * s * c * c - 3.0 * s * s * s)) / R};
  });
}

RadialFunction zero_density() {
  return RadialFunction("zero", {}, [](double) { return Jet{}; });
}

RadialFunction constant_density(double value) {
  return RadialFunction("constant", {{"value", value}}, [value](double) { return Jet{value, 0.0, 0.0}; });
}

RadialFunction linear_density(double slope) {
  return RadialFunction("linear", {{"slope", slope}},
                        [slope](double t) { return Jet{slope * t, slope, 0.0}; });
}

RadialFunction quadratic_density(double alpha) {
  return RadialFunction("quadratic", {{"alpha", alpha}},
                        [alpha](double t) { return Jet{0.5 * alpha * t * t, alpha * t, alpha}; });
}

RadialFunction log1p_density(double alpha) {
  return RadialFunction("log1p", {{"alpha", alpha}}, [alpha](double t) {
    const double u = 1.0 + t;
    return Jet{alpha * std::log1p(t), alpha / u, -alpha / (u * u)};
  });
}

RadialFunction sin2_density(double amp, double freq) {
  return RadialFunction("sin2", {{"amp", amp}, {"freq", freq}}, [amp, freq](double t) {
    const double x = freq * t;
    const double s = std::sin(x);
    return Jet{amp * s * s, amp * freq * std::sin(2.0 * x), 2.0 * amp * freq * freq * std::cos(2.0 * x)};
  });
}

RadialFunction sin_field(double amp) {
  return RadialFunction("sin", {{"amp", amp}}, [amp](double t) {
    return Jet{amp * std::sin(t), amp * std::cos(t), -amp * std::sin(t)};
  });
}

RadialFunction linear_field(double alpha) {
  return RadialFunction("linear", {{"alpha", alpha}},
                        [alpha](double t) { return Jet{alpha * t, alpha, 0.0}; });
}

}  // namespace families
}  // namespace wrc
