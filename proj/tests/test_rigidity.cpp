#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrc/error.hpp"
#include "wrc/rigidity.hpp"

using namespace wrc;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

EpsParams P(int n, double N, double eps = 0.0) {
  return validate_range(n, std::isinf(N) ? ExtendedN::infinity() : ExtendedN::finite(N), eps);
}

WeightedModel sphere(double N = INFINITY, double eps = 0.0, Weight w = Weight::zero()) {
  return WeightedModel({families::sphere(1.0), std::move(w), P(3, N, eps), pi, FarEnd::two_pole});
}

WeightedModel wy_model(bool f_in_s = true) {
  EqualityBuild b;
  b.kind = RigidityCaseKind::N_eq_1;
  b.N = ExtendedN::finite(1.0);
  b.f = families::sin2_density(0.2, 1.0);
  b.f_in_s = f_in_s;
  return build_equality_model(b);
}

}  // namespace

TEST_CASE("case selection") {
  CHECK(case_for(P(3, 3.0, 0.7)) == RigidityCaseKind::N_eq_n);
  CHECK(case_for(P(3, 1.0)) == RigidityCaseKind::N_eq_1);
  CHECK(case_for(P(3, INFINITY)) == RigidityCaseKind::N_other);
  CHECK(case_for(P(3, -2.0, 0.2)) == RigidityCaseKind::N_other);
}

TEST_CASE("round sphere is classified") {
  const auto r = check_max_diameter(Scenario(sphere(), KappaProfile::constant(1.0)));
  CHECK(r.status == RigidityStatus::classified);
  REQUIRE(r.rigidity_case);
  CHECK(r.rigidity_case->kind == RigidityCaseKind::N_other);
  CHECK(r.values.at("tau_V") == Approx(pi).epsilon(1e-12));
  CHECK(r.values.at("law_deviation") < 1e-9);
}

TEST_CASE("N = n with a constant density and eps != 0") {
  const auto m = sphere(3.0, 0.6, Weight::gradient(families::constant_density(0.0)));
  const auto r = check_max_diameter(Scenario(m, KappaProfile::constant(1.0)));
  CHECK(r.status == RigidityStatus::classified);
  CHECK(r.rigidity_case->kind == RigidityCaseKind::N_eq_n);
  CHECK(r.rigidity_case->eps == Approx(0.6));
}

TEST_CASE("N = 1 two-pole equality model") {
  const auto m = wy_model();
  const Scenario sc(m, KappaProfile::constant(1.0));
  REQUIRE(sc.tensor_hypothesis_holds());
  const auto r = check_max_diameter(sc);
  CHECK(r.status == RigidityStatus::classified);
  CHECK(r.rigidity_case->kind == RigidityCaseKind::N_eq_1);
  CHECK(r.values.at("law_deviation") < 1e-9);
  CHECK(r.values.at("compatibility_deviation") < 1e-10);
  // the law holds pointwise
  const auto& mf = sc.mf();
  for (double t : {0.3, 1.0, 2.0})
    CHECK(m.phi_jet(t).v == Approx(warping_law(m, mf, RigidityCaseKind::N_eq_1, t)).epsilon(1e-9));
}

TEST_CASE("N = 1 with f given in t does not close") {
  const auto m = wy_model(false);
  const auto r = check_max_diameter(Scenario(m, KappaProfile::constant(1.0)));
  CHECK(r.status == RigidityStatus::vacuous);
}

TEST_CASE("perturbed sphere") {
  const auto m = WeightedModel({families::perturbed_sphere(1.0, 1e-3), Weight::zero(), P(3, INFINITY), pi,
                                FarEnd::two_pole});
  // kappa = 1 is not a lower bound for the perturbed curvature
  CHECK(check_max_diameter(Scenario(m, KappaProfile::constant(1.0))).status == RigidityStatus::vacuous);
  const double k = max_admissible_constant_kappa(m, HypothesisMode::full);
  const auto r = check_max_diameter(Scenario(m, KappaProfile::constant(k)));
  CHECK(r.status == RigidityStatus::not_maximal);
  CHECK(r.values.at("tau_V") < r.values.at("C_kappa"));
}

TEST_CASE("bounded density model") {
  const double delta = std::log(2.0) / 2;
  const auto m = build_bounded_density_model(3, ExtendedN::finite(5), 0.0, KappaProfile::constant(1.0), delta);
  CHECK(m.t_max() == Approx(2 * pi).epsilon(1e-10));
  CHECK(m.density(1.0) == Approx(2 * delta));
  const auto r = check_max_diameter(Scenario(m, KappaProfile::constant(1.0)), delta);
  REQUIRE(r.bounded_density_status);
  CHECK(*r.bounded_density_status == RigidityStatus::classified);
  CHECK(r.values.at("C_kappa_delta") == Approx(2 * pi).epsilon(1e-10));
  CHECK(r.values.at("bounded_density_law_deviation") < 1e-8);
}

TEST_CASE("volume growth rigidity") {
  const auto hyp = WeightedModel({families::hyperbolic(1.0), Weight::zero(), P(3, INFINITY), 4.0, FarEnd::truncated});
  const auto h = check_volume_growth_rigidity(Scenario(hyp, KappaProfile::constant(-1.0)), {1.0, 2.0});
  CHECK(h.status == RigidityStatus::classified);
  CHECK(h.values.at("min_ratio") == Approx(h.values.at("omega")).epsilon(1e-8));

  const auto euc = WeightedModel({families::euclidean(), Weight::zero(), P(3, INFINITY), 5.0, FarEnd::truncated});
  const auto e = check_volume_growth_rigidity(Scenario(euc, KappaProfile::constant(-1.0)), {});
  CHECK(e.status == RigidityStatus::not_maximal);
  CHECK(e.check.verdict == Verdict::holds);

  CHECK(check_volume_growth_rigidity(Scenario(sphere(), KappaProfile::constant(1.0)), {}).status ==
        RigidityStatus::vacuous);
  CHECK(check_volume_growth_rigidity(Scenario(euc, KappaProfile::constant(1.0)), {}).status ==
        RigidityStatus::vacuous);
}

TEST_CASE("equality builder for N = n") {
  EqualityBuild b;
  b.kind = RigidityCaseKind::N_eq_n;
  b.N = ExtendedN::finite(3.0);
  b.eps = 0.4;
  b.cp = 2.0;
  const auto m = build_equality_model(b);
  CHECK(m.t_max() == Approx(pi / 2).epsilon(1e-10));
  CHECK(m.phi_jet(0.3).v == Approx(std::sin(0.6) / 2).epsilon(1e-12));
  const auto r = check_max_diameter(Scenario(m, KappaProfile::constant(1.0)));
  CHECK(r.status == RigidityStatus::classified);
}
