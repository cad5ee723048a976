#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>

#include "befpp/errors.hpp"
#include "befpp/rng.hpp"

namespace befpp {

// Rates of the Bernoulli-Exponential model: vertical edges are Exp(a),
// horizontal edges Exp(b), and at each vertex an independent Bernoulli
// variable with parameter b/(a+b) decides which of the two outgoing edges
// is free.
struct ModelParams {
  double a = 1.0;
  double b = 1.0;

  double bernoulli_p() const { return b / (a + b); }

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0))
      throw ConfigError("ModelParams: rates a, b must be positive");
    double p = bernoulli_p();
    if (!(p > 0.0) || !(p < 1.0))
      throw ConfigError("ModelParams: Bernoulli parameter must lie in (0,1)");
  }
};

// Edge passage times on a finite grid of vertices (i,j), 0 <= i < width,
// 0 <= j < height.  horiz(i,j) is the time of (i,j)->(i+1,j) and
// vert(i,j) of (i,j)->(i,j+1); both are stored for every vertex, edges
// leaving the grid are simply never used.
struct LatticeSample {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  Eigen::ArrayXXd horiz;  // width x height
  Eigen::ArrayXXd vert;   // width x height
};

// Point-to-point passage times T^pp from the origin, same vertex indexing.
struct PassageGrid {
  Eigen::ArrayXXd T;
};

LatticeSample sample_lattice(const ModelParams& params, int width, int height,
                             std::uint64_t seed, std::uint64_t replica = 0);

PassageGrid passage_time_grid(const LatticeSample& sample);

// Exact minimum over all C(n+m, n) up-right paths, summing weights in path
// order.  Enumeration oracle; guarded to n + m <= 16.
double brute_force_passage_time(const LatticeSample& sample, int n, int m);

// Point-to-half-line time T(n,m): minimum of T^pp over the segment
// D_{n,m} = {(i, n+m-i) : 0 <= i <= n}.
double halfline_time(const PassageGrid& grid, int n, int m);

// Same, total in (n,m): targets with a negative coordinate count as +inf,
// indices beyond the stored anti-diagonal are skipped.
double halfline_time_extended(const PassageGrid& grid, int n, int m);

// Height function H(n,r) = max{k : T^pp(bn-k, an+k) <= r}.  Requires
// a*n_units and b*n_units integral and the grid to contain the full
// anti-diagonal i+j = (a+b)n.
int height(const PassageGrid& grid, const ModelParams& params, int n_units,
           double r);

// Sample-level check of {T(bn-k, an+k) > r} = {H(n,r) < k}.
bool check_event_duality(const PassageGrid& grid, const ModelParams& params,
                         int n_units, int k, double r);

// H(n,r) computed by sparse frontier propagation over anti-diagonals,
// touching only vertices with T <= r plus their rejected neighbours.
// Bit-identical to height(passage_time_grid(sample_lattice(...)), ...) for
// the same (seed, replica); memory O(cluster width).
int cluster_height(const ModelParams& params, int n_units, double r,
                   std::uint64_t seed, std::uint64_t replica);

// Validated integer lattice endpoints a*n, b*n of the theorem's
// anti-diagonal; throws ConfigError when they are not integral.
struct DiagonalSpan {
  std::int64_t an = 0;
  std::int64_t bn = 0;
};
DiagonalSpan diagonal_span(const ModelParams& params, int n_units);

}  // namespace befpp
