#pragma once

// Dormand-Prince 5(4) with the order-4 continuous extension (Hairer's CONTD5).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "wrc/error.hpp"

namespace wrc::ode {

template <std::size_t Dim>
using State = std::array<double, Dim>;

struct Options {
  double rtol = 1e-12;
  double atol = 1e-14;
  double h_init = 0.0;  // 0 selects h = 1e-3 * |t1 - t0|
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

/// One accepted step together with its interpolation coefficients.
template <std::size_t Dim>
struct Segment {
  double t0 = 0.0;
  double h = 0.0;
  State<Dim> r1{}, r2{}, r3{}, r4{}, r5{};

  double t1() const { return t0 + h; }
  State<Dim> at(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    State<Dim> y;
    for (std::size_t i = 0; i < Dim; ++i) {
      y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
    return y;
  }
  const State<Dim>& front() const { return r1; }
  State<Dim> back() const {
    State<Dim> y;
    for (std::size_t i = 0; i < Dim; ++i) y[i] = r1[i] + r2[i];
    return y;
  }
};

namespace detail {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace detail

/// Drives the adaptive integration from t0 towards t1 (t1 > t0). `on_step`
/// receives every accepted segment and returns false to stop early.
/// Returns the time reached.
template <std::size_t Dim, class Rhs, class OnStep>
double integrate_steps(Rhs&& rhs, double t0, State<Dim> y, double t1, const Options& opt,
                       OnStep&& on_step) {
  using namespace detail;
  if (!(t1 > t0)) throw Error(ErrorKind::domain_error, "integration interval is empty");

  State<Dim> k1 = rhs(t0, y), k2, k3, k4, k5, k6, k7, tmp, ynew;
  double t = t0;
  double h = opt.h_init > 0.0 ? opt.h_init : 1e-3 * (t1 - t0);
  h = std::min(h, opt.h_max);
  double err_prev = 1e-4;

  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (t + h > t1) h = t1 - t;
    if (!(h > 1e-15 * std::max(1.0, std::abs(t)))) {
      throw Error(ErrorKind::solver_failure, "step size underflow");
    }

    for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(t + h, ynew);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
      finite = finite && std::isfinite(ynew[i]);
    }
    err = std::sqrt(err / Dim);
    if (!finite || !std::isfinite(err)) {
      h *= 0.25;
      continue;
    }

    if (err <= 1.0) {
      Segment<Dim> seg;
      seg.t0 = t;
      seg.h = h;
      for (std::size_t i = 0; i < Dim; ++i) {
        const double dy = ynew[i] - y[i];
        const double bspl = h * k1[i] - dy;
        seg.r1[i] = y[i];
        seg.r2[i] = dy;
        seg.r3[i] = bspl;
        seg.r4[i] = dy - h * k7[i] - bspl;
        seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                         d7 * k7[i]);
      }
      t += h;
      y = ynew;
      k1 = k7;
      if (!on_step(seg) || t >= t1) return t;
      // PI step-size controller
      const double e = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      fac = std::clamp(fac, 0.2, 10.0);
      err_prev = std::max(err, 1e-4);
      h = std::min(h * fac, opt.h_max);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  throw Error(ErrorKind::solver_failure, "maximum number of steps exceeded");
}

/// Piecewise dense solution; immutable once built.
template <std::size_t Dim>
class DenseSolution {
 public:
  DenseSolution() = default;
  explicit DenseSolution(std::vector<Segment<Dim>> segs) : segs_(std::move(segs)) {}

  double t_begin() const { return segs_.front().t0; }
  double t_end() const { return segs_.back().t1(); }
  const std::vector<Segment<Dim>>& segments() const { return segs_; }

  State<Dim> operator()(double t) const { return locate(t).at(t); }

  const Segment<Dim>& locate(double t) const {
    if (segs_.empty()) throw Error(ErrorKind::domain_error, "empty dense solution");
    const double span = t_end() - t_begin();
    if (t < t_begin() - 1e-12 * span || t > t_end() + 1e-12 * span) {
      throw Error(ErrorKind::domain_error, "evaluation outside the integrated interval");
    }
    auto it = std::upper_bound(segs_.begin(), segs_.end(), t,
                               [](double x, const Segment<Dim>& s) { return x < s.t0; });
    if (it == segs_.begin()) return segs_.front();
    return *std::prev(it);
  }

 private:
  std::vector<Segment<Dim>> segs_;
};

template <std::size_t Dim, class Rhs>
DenseSolution<Dim> integrate_dense(Rhs&& rhs, double t0, const State<Dim>& y0, double t1,
                                   const Options& opt = {}) {
  std::vector<Segment<Dim>> segs;
  integrate_steps<Dim>(rhs, t0, y0, t1, opt, [&](const Segment<Dim>& s) {
    segs.push_back(s);
    return true;
  });
  return DenseSolution<Dim>(std::move(segs));
}

/// Bisection for a sign change of g on [a, b]; g(a) and g(b) must differ in sign.
template <class G>
double bisect(G&& g, double a, double b, double abs_tol = 1e-14) {
  double ga = g(a);
  for (int it = 0; it < 200 && (b - a) > abs_tol; ++it) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm > 0.0) == (ga > 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace wrc::ode
