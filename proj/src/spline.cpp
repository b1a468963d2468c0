#include "wrc/spline.hpp"

#include <algorithm>

#include "wrc/error.hpp"

namespace wrc {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, double slope_begin,
                         double slope_end, Beyond beyond)
    : x_(std::move(x)), y_(std::move(y)), beyond_(beyond) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw Error(ErrorKind::invalid_model, "spline needs matching grids with at least 2 nodes");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw Error(ErrorKind::invalid_model, "spline grid not increasing");
  }
  // Tridiagonal system for the second derivatives (Thomas algorithm).
  std::vector<double> a(n), b(n), c(n), r(n);
  const double h0 = x_[1] - x_[0];
  b[0] = h0 / 3.0;
  c[0] = h0 / 6.0;
  r[0] = (y_[1] - y_[0]) / h0 - slope_begin;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    a[i] = hl / 6.0;
    b[i] = (hl + hr) / 3.0;
    c[i] = hr / 6.0;
    r[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
  }
  const double hn = x_[n - 1] - x_[n - 2];
  a[n - 1] = hn / 6.0;
  b[n - 1] = hn / 3.0;
  r[n - 1] = slope_end - (y_[n - 1] - y_[n - 2]) / hn;
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = r[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

CubicSpline CubicSpline::with_estimated_slopes(std::vector<double> x, std::vector<double> y,
                                               Beyond beyond) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) {
    throw Error(ErrorKind::invalid_model, "spline needs at least 3 nodes to estimate slopes");
  }
  auto three_point = [](double x0, double x1, double x2, double y0, double y1, double y2) {
    // derivative at x0 of the quadratic through the three points
    const double h1 = x1 - x0, h2 = x2 - x0;
    return (y1 - y0) * h2 / (h1 * (h2 - h1)) - (y2 - y0) * h1 / (h2 * (h2 - h1));
  };
  const double s0 = three_point(x[0], x[1], x[2], y[0], y[1], y[2]);
  const double sn = three_point(x[n - 1], x[n - 2], x[n - 3], y[n - 1], y[n - 2], y[n - 3]);
  return CubicSpline(std::move(x), std::move(y), s0, sn, beyond);
}

Jet CubicSpline::operator()(double x) const {
  if (beyond_ == Beyond::clamp_value && x >= x_.back()) return {y_.back(), 0.0, 0.0};
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h;
  const double B = (x - x_[i]) / h;
  Jet j;
  j.v = A * y_[i] + B * y_[i + 1] + ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
  j.d1 = (y_[i + 1] - y_[i]) / h - (3.0 * A * A - 1.0) / 6.0 * h * m_[i] +
         (3.0 * B * B - 1.0) / 6.0 * h * m_[i + 1];
  j.d2 = A * m_[i] + B * m_[i + 1];
  return j;
}

}  // namespace wrc
