#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "befpp/empirical.hpp"
#include "befpp/lattice.hpp"

namespace befpp {

// Theorem-scale constants for the rescaled height at level s:
//   r_n = s / (sqrt(ab(a+b)) sqrt(n)),  scaled H = sqrt((a+b)/(ab)) H / sqrt(n).
struct HeightScaling {
  double level_r;       // lattice percolation level r_n
  double height_scale;  // multiplier applied to the integer height
};
HeightScaling height_scaling(const ModelParams& params, int n_units, double s);

// count i.i.d. replicas of the rescaled height, deterministic in
// (params, n_units, s, seed); replicas are keyed by index, not thread.
EmpiricalCDF scaled_height_ensemble(const ModelParams& params, int n_units,
                                    double s, std::size_t count,
                                    std::uint64_t seed);

// deterministic parallel map over replica indices [0, count)
void parallel_replicas(std::size_t count,
                       const std::function<void(std::size_t)>& body);

}  // namespace befpp
