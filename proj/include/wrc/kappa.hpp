#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wrc/spline.hpp"

namespace wrc {

/// Lower-bound profile kappa(s) on [0, +inf).
///
/// Kinds: constant, sampled (cubic interpolation, clamped to the last value
/// past the final node), trig (base + amp sin(freq s + phase)), linear
/// (base + slope s) and rescaled (s -> e^{-4 delta} kappa(e^{-2 delta} s)).
class KappaProfile {
 public:
  static KappaProfile constant(double value);
  static KappaProfile sampled(std::vector<double> s, std::vector<double> values);
  static KappaProfile trig(double base, double amp, double freq, double phase);
  static KappaProfile linear(double base, double slope);

  double operator()(double s) const { return eval_(s); }

  const std::string& kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }
  std::optional<double> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }

  /// A lower bound of kappa on [0, +inf) when one is known, else -inf.
  double infimum() const { return infimum_; }

  /// The profile kappa e^{-4 delta}: s -> e^{-4 delta} kappa(e^{-2 delta} s).
  KappaProfile rescaled(double delta) const;

  /// Sample nodes of a sampled profile (empty for the other kinds).
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& node_values() const { return node_values_; }

 private:
  KappaProfile() = default;
  std::function<double(double)> eval_;
  std::string kind_;
  std::map<std::string, double> params_;
  double infimum_ = 0.0;
  std::vector<double> nodes_, node_values_;
};

}  // namespace wrc
