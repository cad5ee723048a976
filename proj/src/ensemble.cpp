#include "befpp/ensemble.hpp"

#include <cmath>
#include <thread>

namespace befpp {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

HeightScaling height_scaling(const ModelParams& params, int n_units, double s) {
  params.validate();
  if (n_units < 1) throw ConfigError("height_scaling: n_units must be >= 1");
  if (!(s >= 0.0)) throw ConfigError("height_scaling: s must be >= 0");
  const double a = params.a, b = params.b;
  const double n = static_cast<double>(n_units);
  HeightScaling h;
  h.level_r = s / (std::sqrt(a * b * (a + b)) * std::sqrt(n));
  h.height_scale = std::sqrt((a + b) / (a * b)) / std::sqrt(n);
  return h;
}

void parallel_replicas(std::size_t count,
                       const std::function<void(std::size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::min<std::size_t>(hw == 0 ? 1 : hw, count);
  if (nthreads <= 1) {
    for (std::size_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < count; r += nthreads) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

EmpiricalCDF scaled_height_ensemble(const ModelParams& params, int n_units,
                                    double s, std::size_t count,
                                    std::uint64_t seed) {
  if (count < 1) throw ConfigError("scaled_height_ensemble: count must be >= 1");
  const HeightScaling sc = height_scaling(params, n_units, s);
  std::vector<double> out(count);
  parallel_replicas(count, [&](std::size_t rep) {
    const int h = cluster_height(params, n_units, sc.level_r, seed,
                                 static_cast<std::uint64_t>(rep));
    out[rep] = sc.height_scale * static_cast<double>(h);
  });
  return EmpiricalCDF(std::move(out));
}

}  // namespace befpp
