#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wrc/error.hpp"

namespace wrc {

/// Adaptive Gauss-Kronrod (31 point) on [a, b]. Throws SolverFailure when the
/// error estimate stays above the requested relative tolerance.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-11) {
  if (b <= a) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 20, rel_tol, &err, &l1);
  if (!std::isfinite(value)) throw Error(ErrorKind::solver_failure, "quadrature returned a non-finite value");
  const double accept = std::max(1e3 * rel_tol * l1, 1e-300);
  if (err <= accept) return value;
  // The recursive estimate is pessimistic at round-off level on short
  // intervals; accept when an independent higher-order rule agrees.
  const double other = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol);
  if (std::abs(other - value) > accept) {
    throw Error(ErrorKind::solver_failure, "quadrature did not reach tolerance");
  }
  return value;
}

/// Chebyshev-distributed interior nodes on ]a, b[, clustered at both ends.
inline std::vector<double> chebyshev_probes(double a, double b, std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double th = std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    x[k] = a + (b - a) * 0.5 * (1.0 - std::cos(th));
  }
  return x;
}

inline std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t k = 0; k < count; ++k) {
    x[k] = count == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return x;
}

/// Ridders' extrapolated central difference. `h` is the initial step.
template <class F>
double ridders_derivative(F&& f, double x, double h, double* err_out = nullptr) {
  constexpr int ntab = 10;
  constexpr double con = 1.4, con2 = con * con, safe = 2.0;
  std::array<std::array<double, ntab>, ntab> a{};
  double err = std::numeric_limits<double>::max();
  double ans = 0.0;
  a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
  ans = a[0][0];
  for (int i = 1; i < ntab; ++i) {
    h /= con;
    a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double errt =
          std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        ans = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= safe * err) break;
  }
  if (err_out) *err_out = err;
  return ans;
}

/// Volume of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_volume(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace wrc
