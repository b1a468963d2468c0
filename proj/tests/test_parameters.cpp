#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wrc/error.hpp"
#include "wrc/kappa.hpp"
#include "wrc/parameters.hpp"
#include "wrc/spline.hpp"

using namespace wrc;
using doctest::Approx;

namespace {
ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::config_error;
}
}  // namespace

TEST_CASE("validate_range: constants at the range ends") {
  CHECK(validate_range(3, ExtendedN::finite(5), 1.0).c == Approx(0.25));
  CHECK(validate_range(3, ExtendedN::finite(1), 0.0).c == Approx(0.5));
  CHECK(validate_range(3, ExtendedN::finite(0), 1.0 / 3.0).c == Approx(1.0 / 3.0));
  const auto inf = validate_range(3, ExtendedN::infinity(), 0.0);
  CHECK(inf.eps0 == Approx(1.0));
  CHECK(inf.c == Approx(0.5));
}

TEST_CASE("validate_range: c follows the closed form inside the range") {
  for (double N : {-3.0, 0.0, 4.0, 5.0, 10.0}) {
    for (double eps : {-0.3, 0.0, 0.3}) {
      const auto p = validate_range(4, ExtendedN::finite(N), eps);
      CHECK(p.c == Approx((1.0 - eps * eps * (N - 4) / (N - 1)) / 3.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("validate_range: N = n leaves eps free and forces V = 0") {
  for (double eps : {-2.0, 0.5, 5.0}) {
    const auto p = validate_range(3, ExtendedN::finite(3), eps);
    CHECK(std::isinf(p.eps0));
    CHECK(p.requires_zero_V);
    CHECK(p.c == Approx(0.5));
    CHECK(p.field_square_coeff() == 0.0);
  }
}

TEST_CASE("validate_range: violations") {
  CHECK(kind_of([] { validate_range(3, ExtendedN::finite(2), 0.0); }) == ErrorKind::range_violation);
  CHECK(kind_of([] { validate_range(3, ExtendedN::finite(1), 0.1); }) == ErrorKind::range_violation);
  CHECK(kind_of([] { validate_range(3, ExtendedN::finite(5), 10.0); }) == ErrorKind::range_violation);
  CHECK(kind_of([] { validate_range(1, ExtendedN::infinity(), 0.0); }) == ErrorKind::range_violation);
  CHECK(kind_of([] { validate_range(3, ExtendedN::infinity(), 1.0); }) == ErrorKind::range_violation);
  CHECK(kind_of([] { ExtendedN::finite(INFINITY); }) == ErrorKind::range_violation);
}

TEST_CASE("base_point_constant") {
  const auto p = validate_range(3, ExtendedN::infinity(), 0.0);
  CHECK(base_point_constant(p, 0.0, GradientCp{}) == 1.0);
  CHECK(base_point_constant(p, 1.0, GradientCp{}) == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(base_point_constant(p, 7.0, FreeCp{2.5}) == 2.5);
  CHECK(kind_of([&] { base_point_constant(p, 0.0, FreeCp{0.0}); }) == ErrorKind::non_positive);
}

TEST_CASE("extended N") {
  CHECK(ExtendedN::infinity().to_string() == "inf");
  CHECK(ExtendedN::finite(5).equals(5.0));
  CHECK(kind_of([] { (void)ExtendedN::infinity().value(); }) == ErrorKind::domain_error);
}

TEST_CASE("cubic spline reproduces a cubic and its derivatives") {
  auto f = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; };
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(0.1 * i + 0.01 * (i % 3));
    y.push_back(f(x.back()));
  }
  const CubicSpline sp(x, y, -2.0 + 1.5 * x.front() * x.front(), -2.0 + 1.5 * x.back() * x.back());
  for (double t : {0.05, 0.33, 1.0, 1.77}) {
    const Jet j = sp(t);
    CHECK(j.v == Approx(f(t)).epsilon(1e-12));
    CHECK(j.d1 == Approx(-2.0 + 1.5 * t * t).epsilon(1e-10));
    CHECK(j.d2 == Approx(3.0 * t).epsilon(1e-9));
  }
}

TEST_CASE("kappa profiles") {
  const auto k = KappaProfile::trig(1.0, 0.5, 2.0, 0.0);
  CHECK(k(0.3) == Approx(1.0 + 0.5 * std::sin(0.6)));
  CHECK(k.infimum() == 0.5);
  CHECK_FALSE(k.is_constant());

  const auto r = KappaProfile::constant(1.0).rescaled(std::log(2.0) / 2.0);
  CHECK(r.constant_value().value() == Approx(0.25));
  CHECK(r(3.0) == Approx(0.25));

  CHECK(KappaProfile::linear(1.0, -0.1).infimum() == -INFINITY);

  std::vector<double> s, v;
  for (int i = 0; i <= 40; ++i) {
    s.push_back(0.1 * i);
    v.push_back(1.0 + 0.5 * std::sin(s.back()));
  }
  const auto sp = KappaProfile::sampled(s, v);
  CHECK(sp(1.234) == Approx(1.0 + 0.5 * std::sin(1.234)).epsilon(1e-5));
  CHECK(sp(100.0) == Approx(v.back()));  // clamped past the last node
  CHECK(kind_of([] { KappaProfile::sampled({0.0, 1.0}, {1.0, 1.0}); }) == ErrorKind::invalid_model);
}
