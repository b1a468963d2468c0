#include "wrc/model_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wrc/error.hpp"
#include "wrc/numerics.hpp"

namespace wrc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ModelFunctions::ModelFunctions(KappaProfile kappa, double c, double domain_max,
                               std::shared_ptr<const ode::DenseSolution<2>> sol, double c_kappa)
    : kappa_(std::move(kappa)), c_(c), domain_max_(domain_max), sol_(std::move(sol)),
      c_kappa_(c_kappa) {}

void ModelFunctions::require_in_domain(double s) const {
  if (s < 0.0 || s > domain_max_ * (1.0 + 1e-12)) {
    throw Error(ErrorKind::domain_error, "s = " + std::to_string(s) + " outside [0, domain_max]");
  }
}

double ModelFunctions::s_kappa(double s) const {
  require_in_domain(s);
  return (*sol_)(std::min(s, domain_max_))[0];
}

double ModelFunctions::ds_kappa(double s) const {
  require_in_domain(s);
  return (*sol_)(std::min(s, domain_max_))[1];
}

double ModelFunctions::s_kappa_bar(double s) const {
  if (s >= c_kappa_) return 0.0;
  return std::max(0.0, s_kappa(s));
}

bool ModelFunctions::has_finite_zero() const { return std::isfinite(c_kappa_); }

double default_domain_max(const KappaProfile& kappa, double fallback) {
  constexpr double floor = 1e-2;
  if (kappa.infimum() > 0.0) {
    return 4.0 * std::numbers::pi / std::sqrt(std::max(kappa.infimum(), floor));
  }
  return fallback;
}

ModelFunctions solve_model(const KappaProfile& kappa, double c, double domain_max) {
  if (!(domain_max > 0.0)) throw Error(ErrorKind::domain_error, "domain_max must be positive");
  if (!(c > 0.0)) throw Error(ErrorKind::domain_error, "c must be positive");

  auto rhs = [&kappa](double s, const ode::State<2>& y) {
    return ode::State<2>{y[1], -kappa(s) * y[0]};
  };
  ode::Options opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-15;
  opt.h_max = 0.05;
  auto sol = std::make_shared<const ode::DenseSolution<2>>(
      ode::integrate_dense<2>(rhs, 0.0, {0.0, 1.0}, domain_max, opt));

  double c_kappa = kInf;
  for (const auto& seg : sol->segments()) {
    const double a = seg.front()[0];
    const double b = seg.back()[0];
    if (seg.t0 > 0.0 && a > 0.0 && b <= 0.0) {
      c_kappa = ode::bisect([&seg](double s) { return seg.at(s)[0]; }, seg.t0, seg.t1(), 1e-15);
      break;
    }
  }
  return ModelFunctions(kappa, c, domain_max, std::move(sol), c_kappa);
}

DerivedValues eval_derived(const ModelFunctions& mf, double s) {
  if (!(s > 0.0) || s >= mf.C_kappa()) {
    throw Error(ErrorKind::domain_error, "cot_kappa requires 0 < s < C_kappa");
  }
  double cot = 0.0;
  if (s < kSeriesSwitch) {
    cot = 1.0 / s - mf.kappa()(0.0) * s / 3.0;
  } else {
    cot = mf.ds_kappa(s) / mf.s_kappa(s);
  }
  return {cot, cot / mf.c()};
}

double model_volume(const ModelFunctions& mf, double r) {
  if (r < 0.0) throw Error(ErrorKind::domain_error, "radius must be non-negative");
  const double upper = std::min(r, mf.C_kappa());
  if (upper <= 0.0) return 0.0;
  const double p = 1.0 / mf.c();
  return integrate([&](double s) { return std::pow(mf.s_kappa_bar(s), p); }, 0.0, upper, 1e-12);
}

bool check_symmetry(const ModelFunctions& mf, double tol) {
  if (!mf.has_finite_zero()) throw Error(ErrorKind::domain_error, "symmetry needs C_kappa < inf");
  const double C = mf.C_kappa();
  double worst = 0.0;
  for (double s : linspace(0.0, C, 201)) {
    const double mirror = std::max(0.0, C - s);
    worst = std::max(worst, std::abs(mf.kappa()(s) - mf.kappa()(mirror)));
    worst = std::max(worst, std::abs(mf.s_kappa(s) - mf.s_kappa(mirror)));
  }
  return worst < tol;
}

}  // namespace wrc
