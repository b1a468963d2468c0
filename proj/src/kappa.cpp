#include "wrc/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wrc/error.hpp"

namespace wrc {

KappaProfile KappaProfile::constant(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::invalid_model, "kappa must be finite");
  KappaProfile k;
  k.eval_ = [value](double) { return value; };
  k.kind_ = "constant";
  k.params_ = {{"value", value}};
  k.infimum_ = value;
  return k;
}

KappaProfile KappaProfile::sampled(std::vector<double> s, std::vector<double> values) {
  if (s.size() < 4 || values.size() != s.size()) {
    throw Error(ErrorKind::invalid_model, "sampled kappa needs at least 4 matching nodes");
  }
  if (s.front() != 0.0) throw Error(ErrorKind::invalid_model, "sampled kappa grid must start at 0");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) {
      throw Error(ErrorKind::invalid_model, "sampled kappa grid must be strictly increasing");
    }
  }
  KappaProfile k;
  k.nodes_ = s;
  k.node_values_ = values;
  auto spline = std::make_shared<const CubicSpline>(CubicSpline::with_estimated_slopes(
      std::move(s), std::move(values), CubicSpline::Beyond::clamp_value));
  k.eval_ = [spline](double x) { return (*spline)(x).v; };
  k.kind_ = "sampled";
  // Interpolant minimum is approximated by the node minimum.
  k.infimum_ = *std::min_element(k.node_values_.begin(), k.node_values_.end());
  return k;
}

KappaProfile KappaProfile::trig(double base, double amp, double freq, double phase) {
  KappaProfile k;
  k.eval_ = [=](double s) { return base + amp * std::sin(freq * s + phase); };
  k.kind_ = "trig";
  k.params_ = {{"base", base}, {"amp", amp}, {"freq", freq}, {"phase", phase}};
  k.infimum_ = base - std::abs(amp);
  return k;
}

KappaProfile KappaProfile::linear(double base, double slope) {
  KappaProfile k;
  k.eval_ = [=](double s) { return base + slope * s; };
  k.kind_ = "linear";
  k.params_ = {{"base", base}, {"slope", slope}};
  k.infimum_ = slope >= 0.0 ? base : -std::numeric_limits<double>::infinity();
  return k;
}

std::optional<double> KappaProfile::constant_value() const {
  if (kind_ == "constant") return params_.at("value");
  if (kind_ == "trig" && params_.at("amp") == 0.0) return params_.at("base");
  if (kind_ == "linear" && params_.at("slope") == 0.0) return params_.at("base");
  if (kind_ == "rescaled" && params_.count("constant")) return params_.at("constant");
  return std::nullopt;
}

KappaProfile KappaProfile::rescaled(double delta) const {
  KappaProfile k = *this;
  const double amp = std::exp(-4.0 * delta);
  const double stretch = std::exp(-2.0 * delta);
  auto inner = eval_;
  k.eval_ = [inner, amp, stretch](double s) { return amp * inner(stretch * s); };
  k.kind_ = "rescaled";
  k.params_ = {{"delta", delta}};
  if (auto cv = constant_value()) k.params_["constant"] = amp * *cv;
  k.infimum_ = std::isfinite(infimum_) ? amp * infimum_ : infimum_;
  k.nodes_.clear();
  k.node_values_.clear();
  return k;
}

}  // namespace wrc
