#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wrc/error.hpp"
#include "wrc/kernels.hpp"
#include "wrc/numerics.hpp"

using namespace wrc;

namespace {

WeightedModel test_model() {
  return WeightedModel({families::euclidean(), Weight::gradient(families::quadratic_density(0.5)),
                        validate_range(3, ExtendedN::finite(5.0), 0.3), 4.0, FarEnd::truncated});
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) && std::isnan(b[i])) continue;
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sample_ray: parallel agrees with the serial reference bit for bit") {
  const auto m = test_model();
  const auto grid = linspace(0.0, m.t_max(), 777);
  const auto s = sample_ray(m, grid, Exec::serial);
  const auto p = sample_ray(m, grid, Exec::parallel);
  CHECK(same(s.f_vp, p.f_vp));
  CHECK(same(s.a, p.a));
  CHECK(same(s.s_v, p.s_v));
  CHECK(same(s.ric_radial, p.ric_radial));
  CHECK(same(s.lap_v, p.lap_v));
  CHECK(same(s.theta_v, p.theta_v));
  CHECK(std::isnan(s.lap_v.front()));
  CHECK(s.ric_radial[100] == doctest::Approx(m.ric_radial(grid[100])));
}

TEST_CASE("pair_min_increment against brute force") {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> d(300);
  for (auto& x : d) x = nd(rng);
  const auto s = pair_min_increment(d, Exec::serial);
  const auto p = pair_min_increment(d, Exec::parallel);
  CHECK(same(s.row_min, p.row_min));
  CHECK(s.row_argmin == p.row_argmin);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < d.size(); ++j) best = std::min(best, d[j] - d[i]);
    REQUIRE(s.row_min[i] == best);
    CHECK(d[s.row_argmin[i]] - d[i] == best);
  }
  CHECK(std::isinf(s.row_min.back()));
}

TEST_CASE("ball_volumes") {
  const auto m = test_model();
  const auto radii = linspace(0.05, m.tau_v(), 25);
  const auto s = ball_volumes(m, radii, Exec::serial);
  const auto p = ball_volumes(m, radii, Exec::parallel);
  CHECK(same(s, p));
  for (std::size_t i = 0; i < radii.size(); i += 6) CHECK(s[i] == doctest::Approx(m.nu_ball(radii[i])));
}

TEST_CASE("for_each_index rethrows the first failure") {
  CHECK_THROWS_AS(for_each_index(100, Exec::parallel,
                                 [](std::size_t i) {
                                   if (i == 37) throw Error(ErrorKind::solver_failure, "boom");
                                 }),
                  Error);
}
