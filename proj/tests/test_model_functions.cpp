#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wrc/error.hpp"
#include "wrc/model_functions.hpp"

using namespace wrc;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("closed forms for constant kappa") {
  const auto one = solve_model(KappaProfile::constant(1.0), 0.5, 10.0);
  const auto zero = solve_model(KappaProfile::constant(0.0), 0.5, 10.0);
  const auto neg = solve_model(KappaProfile::constant(-1.0), 0.5, 10.0);
  double worst = 0.0;
  for (double s = 0.0; s <= 3.0; s += 0.01) {
    worst = std::max(worst, std::abs(one.s_kappa(s) - std::sin(s)));
    worst = std::max(worst, std::abs(zero.s_kappa(s) - s));
    worst = std::max(worst, std::abs(neg.s_kappa(s) - std::sinh(s)));
    worst = std::max(worst, std::abs(one.ds_kappa(s) - std::cos(s)));
  }
  CHECK(worst < 1e-10);
  CHECK(one.C_kappa() == Approx(pi).epsilon(1e-13));
  CHECK(std::isinf(zero.C_kappa()));
  CHECK(std::isinf(neg.C_kappa()));
}

TEST_CASE("sampled kappa against fixed-step RK4") {
  std::vector<double> s, v;
  for (int i = 0; i <= 120; ++i) {
    s.push_back(0.05 * i);
    v.push_back(1.0 + 0.5 * std::sin(s.back()));
  }
  const auto kappa = KappaProfile::sampled(s, v);
  const auto mf = solve_model(kappa, 0.5, 6.0);
  const auto ref = oracle::model_oracle([&](double x) { return kappa(x); }, 6.0, 1e-4);
  CHECK(mf.C_kappa() == Approx(ref.zero).epsilon(1e-9));
  for (double x = 0.1; x < 5.9; x += 0.37) CHECK(mf.s_kappa(x) == Approx(ref.at(x)).epsilon(1e-8));
}

TEST_CASE("eval_derived") {
  const auto one = solve_model(KappaProfile::constant(1.0), 0.5, 4.0);
  CHECK(eval_derived(one, pi / 4).H_kappa == Approx(2.0).epsilon(1e-12));
  CHECK(eval_derived(one, 1e-6).cot_kappa == Approx(1.0 / std::tan(1e-6)).epsilon(1e-12));
  // (s - C) cot_kappa(s) -> 1 at the first zero
  const double s = pi - 1e-5;
  CHECK((s - one.C_kappa()) * eval_derived(one, s).cot_kappa == Approx(1.0).epsilon(1e-6));

  const auto zero = solve_model(KappaProfile::constant(0.0), 0.5, 4.0);
  for (double t : {0.5, 1.0, 3.0}) CHECK(eval_derived(zero, t).H_kappa == Approx(2.0 / t));
  CHECK_THROWS_AS(eval_derived(one, 0.0), Error);
  CHECK_THROWS_AS(eval_derived(one, 3.5), Error);
}

TEST_CASE("model_volume") {
  const auto one = solve_model(KappaProfile::constant(1.0), 0.5, 8.0);
  CHECK(model_volume(one, pi / 2) == Approx(pi / 4).epsilon(1e-11));
  CHECK(model_volume(one, 2 * pi) == Approx(model_volume(one, pi)).epsilon(1e-14));
  const auto zero = solve_model(KappaProfile::constant(0.0), 0.5, 3.0);
  CHECK(model_volume(zero, 2.0) == Approx(8.0 / 3.0).epsilon(1e-12));
  // non-integer exponent 1/c
  const auto frac = solve_model(KappaProfile::constant(1.0), 0.4, 8.0);
  const double ref = oracle::simpson([](double x) { return std::pow(std::sin(x), 2.5); }, 0.0, 2.0);
  CHECK(model_volume(frac, 2.0) == Approx(ref).epsilon(1e-9));
}

TEST_CASE("check_symmetry") {
  CHECK(check_symmetry(solve_model(KappaProfile::constant(1.0), 0.5, 8.0)));

  // kappa = 1 + 0.3 cos(2 pi s / L) with L tuned until C_kappa = L
  double L = pi;
  for (int it = 0; it < 60; ++it) {
    const auto k = KappaProfile::trig(1.0, 0.3, 2 * pi / L, pi / 2);
    const double C = solve_model(k, 0.5, 8.0).C_kappa();
    if (std::abs(C - L) < 1e-13) break;
    L = C;
  }
  const auto sym = KappaProfile::trig(1.0, 0.3, 2 * pi / L, pi / 2);
  const auto ref = oracle::model_oracle([&](double x) { return sym(x); }, 4.0);
  CHECK(ref.zero == Approx(L).epsilon(1e-8));
  CHECK(check_symmetry(solve_model(sym, 0.5, 8.0)));

  CHECK_FALSE(check_symmetry(solve_model(KappaProfile::linear(1.0, 0.3), 0.5, 8.0)));
  CHECK_THROWS_AS(check_symmetry(solve_model(KappaProfile::constant(0.0), 0.5, 8.0)), Error);
}

TEST_CASE("solve_model rejects a degenerate setup") {
  CHECK_THROWS_AS(solve_model(KappaProfile::constant(1.0), 0.5, 0.0), Error);
  CHECK_THROWS_AS(solve_model(KappaProfile::constant(1.0), 0.0, 1.0), Error);
}
