#pragma once

#include <vector>

namespace wrc {

struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Clamped cubic spline on a strictly increasing, possibly non-uniform grid.
class CubicSpline {
 public:
  enum class Beyond { clamp_value, extrapolate };

  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y, double slope_begin, double slope_end,
              Beyond beyond = Beyond::extrapolate);

  /// End slopes from one-sided three-point differences.
  static CubicSpline with_estimated_slopes(std::vector<double> x, std::vector<double> y,
                                           Beyond beyond);

  Jet operator()(double x) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the nodes
  Beyond beyond_ = Beyond::extrapolate;
};

}  // namespace wrc
