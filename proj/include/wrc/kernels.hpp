#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "wrc/model_space.hpp"

namespace wrc {

/// Serial is the reference; parallel must agree with it bit for bit, since
/// every output element is computed independently of the others.
enum class Exec { serial, parallel };

/// body(i) for i in [0, count). Exceptions must not escape an OpenMP region,
/// so the first one is captured and rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto m = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < m; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(wrc_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct RayData {
  std::vector<double> t_grid;
  std::vector<double> f_vp;
  std::vector<double> a;
  std::vector<double> s_v;
  std::vector<double> ric_radial;
  std::vector<double> lap_v;  // NaN at t = 0
  std::vector<double> theta_v;
};

RayData sample_ray(const WeightedModel& model, const std::vector<double>& t_grid, Exec exec);

struct PairMin {
  std::vector<double> row_min;  // min_{j > i} (d_j - d_i); +inf on the last row
  std::vector<std::size_t> row_argmin;
};

/// Triangular pair reduction over an ascending probe set.
PairMin pair_min_increment(const std::vector<double>& d, Exec exec);

std::vector<double> ball_volumes(const WeightedModel& model, const std::vector<double>& radii,
                                 Exec exec);

}  // namespace wrc
