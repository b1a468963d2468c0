#include "wrc/kernels.hpp"

#include <cmath>
#include <limits>

namespace wrc {

RayData sample_ray(const WeightedModel& model, const std::vector<double>& t_grid, Exec exec) {
  const std::size_t m = t_grid.size();
  RayData r;
  r.t_grid = t_grid;
  r.f_vp.resize(m);
  r.a.resize(m);
  r.s_v.resize(m);
  r.ric_radial.resize(m);
  r.lap_v.resize(m);
  r.theta_v.resize(m);
  for_each_index(m, exec, [&](std::size_t i) {
    const double t = t_grid[i];
    r.f_vp[i] = model.f_vp(t);
    r.a[i] = model.a(t);
    r.s_v[i] = model.s_v(t);
    r.ric_radial[i] = model.ric_radial(t);
    r.lap_v[i] = t > 0.0 ? model.laplacian(t) : std::numeric_limits<double>::quiet_NaN();
    r.theta_v[i] = model.theta_v(t);
  });
  return r;
}

PairMin pair_min_increment(const std::vector<double>& d, Exec exec) {
  const std::size_t m = d.size();
  PairMin out;
  out.row_min.assign(m, 0.0);
  out.row_argmin.assign(m, 0);
  for_each_index(m, exec, [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = i;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double inc = d[j] - d[i];
      if (inc < best) {
        best = inc;
        arg = j;
      }
    }
    out.row_min[i] = best;
    out.row_argmin[i] = arg;
  });
  return out;
}

std::vector<double> ball_volumes(const WeightedModel& model, const std::vector<double>& radii,
                                 Exec exec) {
  std::vector<double> out(radii.size());
  for_each_index(radii.size(), exec, [&](std::size_t i) { out[i] = model.nu_ball(radii[i]); });
  return out;
}

}  // namespace wrc
