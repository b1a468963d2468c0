#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wrc/comparison.hpp"
#include "wrc/report.hpp"
#include "wrc/rigidity.hpp"

using namespace wrc;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

EpsParams P(int n, double N, double eps = 0.0) {
  return validate_range(n, std::isinf(N) ? ExtendedN::infinity() : ExtendedN::finite(N), eps);
}

WeightedModel sphere(double R = 1.0, double N = INFINITY) {
  return WeightedModel({families::sphere(R), Weight::zero(), P(3, N), pi * R, FarEnd::two_pole});
}

WeightedModel euclid(Weight w = Weight::zero(), double N = INFINITY, double T = 10.0) {
  return WeightedModel({families::euclidean(), std::move(w), P(3, N), T, FarEnd::truncated});
}

WeightedModel hyperbolic() {
  return WeightedModel({families::hyperbolic(1.0), Weight::zero(), P(3, INFINITY), 4.0, FarEnd::truncated});
}

const Curve& curve(const CheckResult& r, const std::string& name) {
  for (const auto& c : r.curves)
    if (c.name == name) return c;
  FAIL("missing curve " << name);
  return r.curves.front();
}

}  // namespace

TEST_CASE("hypothesis") {
  const Scenario s(sphere(), KappaProfile::constant(1.0));
  CHECK(s.hypothesis_radial().verdict == Verdict::holds);
  CHECK(s.hypothesis_full()->max_abs_slack < 1e-8);
  CHECK(s.hypothesis_full()->equality_everywhere());

  const Scenario e(euclid(), KappaProfile::constant(-1.0));
  for (double x : e.hypothesis_full()->slack) CHECK(x == Approx(2.0));
  const Scenario v(euclid(), KappaProfile::constant(1.0));
  CHECK(v.hypothesis_radial().verdict == Verdict::violated);
  CHECK_FALSE(v.hypothesis_holds());
}

TEST_CASE("riccati") {
  const Scenario s(sphere(1.0, 3.0), KappaProfile::constant(1.0));
  const auto r = check_riccati(s);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.max_abs_slack < 1e-6);

  // Euclidean with f = t^2/2: the raw slack is e^{t^2/2} t^2/2
  const Scenario q(euclid(Weight::gradient(families::quadratic_density(1.0)), INFINITY, 3.0),
                   KappaProfile::constant(0.0));
  const auto rq = check_riccati(q);
  CHECK(rq.verdict == Verdict::holds);
  const auto& raw = curve(rq, "raw_slack");
  for (std::size_t i = 0; i < raw.x.size(); i += 37) {
    const double t = raw.x[i];
    if (t < 0.05) continue;  // the finite difference of the 2/t^2 terms loses digits at the pole
    CHECK(raw.y[i] == Approx(std::exp(t * t / 2) * t * t / 2).epsilon(1e-6));
  }

  const Scenario n1(euclid(Weight::gradient(families::quadratic_density(0.7)), 1.0, 3.0),
                    KappaProfile::constant(0.0));
  CHECK(check_riccati(n1).min_slack >= -1e-6);
}

TEST_CASE("laplacian") {
  const auto eq = check_laplacian(Scenario(sphere(), KappaProfile::constant(1.0)));
  CHECK(eq.verdict == Verdict::holds);
  CHECK(eq.equality_everywhere());

  const Scenario e(euclid(), KappaProfile::constant(-1.0));
  const auto r = check_laplacian(e);
  CHECK(r.verdict == Verdict::holds);
  for (std::size_t i = 0; i < r.probes.size(); i += 50) {
    const double t = r.probes[i];
    if (t < 1e-2) continue;
    const double G = std::sinh(t) * std::sinh(t) * (2.0 / t - 2.0 / std::tanh(t));
    CHECK(r.slack[i] == Approx(-G).epsilon(1e-8));
    CHECK(r.slack[i] > 0.0);
  }
}

TEST_CASE("cut value") {
  const auto s = check_cut_value(Scenario(sphere(), KappaProfile::constant(1.0)));
  CHECK(s.verdict == Verdict::holds);
  CHECK(s.values.at("tau_V") == Approx(pi).epsilon(1e-12));
  CHECK(s.max_abs_slack < 1e-8);

  const auto half = check_cut_value(Scenario(sphere(0.5), KappaProfile::constant(1.0)));
  CHECK(half.verdict == Verdict::holds);
  CHECK(half.values.at("tau_V") == Approx(pi / 2));
  CHECK(half.min_slack == Approx(pi / 2));

  const auto lin = euclid(Weight::gradient(families::linear_density(1.0)), INFINITY, 40.0);
  CHECK(lin.tau_v() == Approx(1.0).epsilon(1e-12));
  // C_kappa = +inf for kappa = 0, and with kappa = 1 the curvature hypothesis fails
  CHECK(check_cut_value(Scenario(lin, KappaProfile::constant(0.0))).verdict == Verdict::vacuous);
  CHECK(check_cut_value(Scenario(lin, KappaProfile::constant(1.0))).verdict == Verdict::vacuous);
}

TEST_CASE("bounded density") {
  const Scenario s(sphere(), KappaProfile::constant(1.0));
  const auto zero = check_bounded_density(s, 0.0);
  CHECK(zero.verdict == Verdict::holds);
  CHECK(zero.values.at("C_kappa_delta") == Approx(s.mf().C_kappa()).epsilon(1e-14));
  CHECK(zero.max_abs_slack < 1e-7);

  const double delta = std::log(2.0) / 2;
  const Scenario b(build_bounded_density_model(3, ExtendedN::finite(5), 0.0, KappaProfile::constant(1.0), delta),
                   KappaProfile::constant(1.0));
  const auto r = check_bounded_density(b, delta);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.values.at("C_kappa_delta") == Approx(2 * pi).epsilon(1e-10));
  CHECK(r.values.at("scaling_identity_deviation") < 1e-8);
  const auto d = check_diameter(b, delta);
  CHECK(d.values.at("bounded_density_bound") == Approx(2 * pi).epsilon(1e-10));
}

TEST_CASE("diameter") {
  const auto s = check_diameter(Scenario(sphere(), KappaProfile::constant(1.0)));
  CHECK(s.verdict == Verdict::holds);
  CHECK(s.values.at("sup_s_V") == Approx(pi).epsilon(1e-12));

  EqualityBuild b;
  b.kind = RigidityCaseKind::N_eq_1;
  b.N = ExtendedN::finite(1.0);
  b.f = families::sin2_density(0.2, 1.0);
  b.f_in_s = true;
  const auto wy = check_diameter(Scenario(build_equality_model(b), KappaProfile::constant(1.0)));
  CHECK(wy.verdict == Verdict::holds);
  CHECK(std::abs(wy.values.at("sup_s_V") - pi) < 1e-7);

  CHECK(check_diameter(Scenario(euclid(), KappaProfile::constant(1.0))).verdict == Verdict::vacuous);
}

TEST_CASE("volume element") {
  const auto s = check_volume_element(Scenario(sphere(), KappaProfile::constant(1.0)));
  CHECK(s.verdict == Verdict::holds);
  CHECK(s.equality_everywhere());

  const auto e = check_volume_element(Scenario(euclid(), KappaProfile::constant(-1.0)));
  CHECK(e.verdict == Verdict::holds);
  const auto& abs = curve(e, "absolute_slack");
  for (std::size_t i = 0; i < abs.x.size(); i += 40) {
    const double x = abs.x[i];
    CHECK(abs.y[i] == Approx(1.0 - x * x / (std::sinh(x) * std::sinh(x))).epsilon(1e-9).scale(1.0));
  }

  const auto h = check_volume_element(Scenario(hyperbolic(), KappaProfile::constant(-1.0)));
  CHECK(h.verdict == Verdict::holds);
  CHECK(h.max_abs_slack < 1e-7);
}

TEST_CASE("bishop-gromov") {
  const auto s = check_bishop_gromov(Scenario(sphere(), KappaProfile::constant(1.0)), {pi / 4, pi / 2, pi});
  CHECK(s.verdict == Verdict::holds);
  CHECK(s.max_abs_slack < 1e-7);
  CHECK(s.values.at("nu(" + format_number(pi) + ")") == Approx(2 * pi * pi).epsilon(1e-10));

  const Scenario e(euclid(), KappaProfile::constant(-1.0));
  const auto r = check_bishop_gromov(e, {1.0, 2.0});
  CHECK(r.verdict == Verdict::holds);
  const double vol_ratio = r.values.at("nu(2)") / r.values.at("nu(1)");
  const double model_ratio = r.values.at("omega_S(2)") / r.values.at("omega_S(1)");
  CHECK(vol_ratio == Approx(8.0).epsilon(1e-11));
  CHECK(model_ratio == Approx((std::sinh(4.0) / 4 - 1) / (std::sinh(2.0) / 4 - 0.5)).epsilon(1e-11));
  CHECK(vol_ratio <= model_ratio);

  const auto lin = euclid(Weight::gradient(families::linear_density(1.0)), INFINITY, 20.0);
  const Scenario g(lin, KappaProfile::constant(-1.0));
  REQUIRE(g.hypothesis_holds());
  const auto rg = check_bishop_gromov(g, {0.5, 0.9});
  CHECK(rg.verdict == Verdict::holds);
  const double direct = 4 * pi * oracle::simpson([&](double x) { return lin.theta_hat(x); }, 0.0, 0.5, 4000);
  CHECK(rg.values.at("nu(0.5)") == Approx(direct).epsilon(1e-7));
  CHECK(rg.values.at("monotone_min_slack") >= -1e-7);
}

TEST_CASE("max admissible constant kappa") {
  const double k = max_admissible_constant_kappa(sphere(), HypothesisMode::full);
  CHECK(k == Approx(1.0).epsilon(1e-5));
  CHECK(k <= 1.0);
  const auto pert = WeightedModel({families::perturbed_sphere(1.0, 1e-3), Weight::zero(), P(3, INFINITY), pi,
                                   FarEnd::two_pole});
  const double kp = max_admissible_constant_kappa(pert, HypothesisMode::full);
  CHECK(Scenario(pert, KappaProfile::constant(kp)).tensor_hypothesis_holds());
  CHECK_FALSE(Scenario(pert, KappaProfile::constant(kp * 1.01)).tensor_hypothesis_holds());
}

TEST_CASE("serial and parallel scenarios agree") {
  Tolerances ser;
  ser.exec = Exec::serial;
  const auto m = euclid(Weight::gradient(families::quadratic_density(0.5)), 5.0, 2.0);
  const Scenario a(m, KappaProfile::constant(-3.0), ser);
  const Scenario b(m, KappaProfile::constant(-3.0));
  CHECK(check_laplacian(a).slack == check_laplacian(b).slack);
  CHECK(check_bishop_gromov(a, {}).slack == check_bishop_gromov(b, {}).slack);
  CHECK(check_volume_element(a).slack == check_volume_element(b).slack);
}
