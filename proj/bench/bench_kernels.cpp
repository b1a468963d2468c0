// Serial reference vs OpenMP kernels: wall time and agreement.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>

#include <omp.h>

#include "wrc/kernels.hpp"
#include "wrc/numerics.hpp"

using namespace wrc;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) && std::isnan(b[i])) continue;
    if (a[i] == b[i]) continue;
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

void row(const char* name, std::size_t size, double ts, double tp, double diff) {
  std::printf("%-18s %8zu  serial %9.4f s  parallel %9.4f s  speedup %5.2fx  max|diff| %.3g\n", name, size,
              ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto params = validate_range(3, ExtendedN::finite(5.0), 0.3);
  const WeightedModel model({families::euclidean(), Weight::gradient(families::quadratic_density(0.5)), params,
                             6.0, FarEnd::truncated});
  const auto grid = linspace(0.0, model.t_max(), n);

  RayData rs, rp;
  const double t_rs = best_of(3, [&] { rs = sample_ray(model, grid, Exec::serial); });
  const double t_rp = best_of(3, [&] { rp = sample_ray(model, grid, Exec::parallel); });
  double d = std::max({max_diff(rs.ric_radial, rp.ric_radial), max_diff(rs.lap_v, rp.lap_v),
                       max_diff(rs.theta_v, rp.theta_v), max_diff(rs.s_v, rp.s_v)});
  row("sample_ray", n, t_rs, t_rp, d);

  std::vector<double> values(4 * n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(values.size());
    values[i] = std::sin(7.0 * x) + 0.1 * x;
  }
  PairMin ps, pp;
  const double t_ps = best_of(3, [&] { ps = pair_min_increment(values, Exec::serial); });
  const double t_pp = best_of(3, [&] { pp = pair_min_increment(values, Exec::parallel); });
  row("pair_min", values.size(), t_ps, t_pp, max_diff(ps.row_min, pp.row_min));

  const auto radii = linspace(model.tau_v() / 200.0, model.tau_v(), 200);
  std::vector<double> vs, vp;
  const double t_vs = best_of(1, [&] { vs = ball_volumes(model, radii, Exec::serial); });
  const double t_vp = best_of(1, [&] { vp = ball_volumes(model, radii, Exec::parallel); });
  row("ball_volumes", radii.size(), t_vs, t_vp, max_diff(vs, vp));
  return 0;
}
