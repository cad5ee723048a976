#include "befpp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace befpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgePair {
  double horiz;
  double vert;
};

inline EdgePair edges_at(const ModelParams& p, std::uint64_t seed,
                         std::uint64_t replica, std::int64_t i, std::int64_t j,
                         std::uint64_t thresh) {
  VertexDraw d = vertex_draw(seed, replica, i, j, thresh);
  if (d.xi) return {0.0, d.exp_unit / p.a};
  return {d.exp_unit / p.b, 0.0};
}

}  // namespace

LatticeSample sample_lattice(const ModelParams& params, int width, int height,
                             std::uint64_t seed, std::uint64_t replica) {
  params.validate();
  if (width < 1 || height < 1)
    throw ConfigError("sample_lattice: dimensions must be >= 1");
  LatticeSample s;
  s.width = width;
  s.height = height;
  s.seed = seed;
  s.replica = replica;
  s.horiz.resize(width, height);
  s.vert.resize(width, height);
  const std::uint64_t thresh = bernoulli_threshold(params.bernoulli_p());
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i) {
      EdgePair e = edges_at(params, seed, replica, i, j, thresh);
      s.horiz(i, j) = e.horiz;
      s.vert(i, j) = e.vert;
    }
  return s;
}

PassageGrid passage_time_grid(const LatticeSample& sample) {
  const int W = sample.width, H = sample.height;
  PassageGrid g;
  g.T.resize(W, H);
  // Fixed row-major order with left-to-right accumulation so the DP value
  // matches the path-ordered brute-force sum bit for bit.
  for (int j = 0; j < H; ++j) {
    for (int i = 0; i < W; ++i) {
      if (i == 0 && j == 0) {
        g.T(0, 0) = 0.0;
        continue;
      }
      double best = kInf;
      if (i > 0) best = g.T(i - 1, j) + sample.horiz(i - 1, j);
      if (j > 0) best = std::min(best, g.T(i, j - 1) + sample.vert(i, j - 1));
      g.T(i, j) = best;
    }
  }
  return g;
}

namespace {

double enumerate_paths(const LatticeSample& s, int i, int j, double acc,
                       int n, int m) {
  if (i == n && j == m) return acc;
  double best = kInf;
  if (i < n) best = enumerate_paths(s, i + 1, j, acc + s.horiz(i, j), n, m);
  if (j < m)
    best = std::min(best, enumerate_paths(s, i, j + 1, acc + s.vert(i, j), n, m));
  return best;
}

}  // namespace

double brute_force_passage_time(const LatticeSample& sample, int n, int m) {
  if (n < 0 || m < 0 || n >= sample.width || m >= sample.height)
    throw ConfigError("brute_force_passage_time: target outside sample");
  if (n + m > 16)
    throw ConfigError("brute_force_passage_time: n + m exceeds enumeration guard");
  return enumerate_paths(sample, 0, 0, 0.0, n, m);
}

double halfline_time(const PassageGrid& grid, int n, int m) {
  if (n < 0 || m < 0) throw ConfigError("halfline_time: negative target");
  if (n >= grid.T.rows() || n + m >= grid.T.cols())
    throw ConfigError("halfline_time: grid too small for D_{n,m}");
  double best = kInf;
  for (int i = 0; i <= n; ++i) best = std::min(best, grid.T(i, n + m - i));
  return best;
}

double halfline_time_extended(const PassageGrid& grid, int n, int m) {
  if (n < 0) return kInf;  // target half-line entirely off-lattice
  const std::int64_t diag = static_cast<std::int64_t>(n) + m;
  if (diag < 0) return kInf;
  double best = kInf;
  const std::int64_t imax =
      std::min<std::int64_t>(n, std::min<std::int64_t>(diag, grid.T.rows() - 1));
  for (std::int64_t i = 0; i <= imax; ++i) {
    std::int64_t j = diag - i;
    if (j < 0 || j >= grid.T.cols()) continue;
    best = std::min(best, grid.T(i, j));
  }
  return best;
}

DiagonalSpan diagonal_span(const ModelParams& params, int n_units) {
  params.validate();
  if (n_units < 0) throw ConfigError("diagonal_span: n_units must be >= 0");
  const double an = params.a * n_units;
  const double bn = params.b * n_units;
  DiagonalSpan d{static_cast<std::int64_t>(std::llround(an)),
                 static_cast<std::int64_t>(std::llround(bn))};
  if (std::abs(an - static_cast<double>(d.an)) > 1e-9 ||
      std::abs(bn - static_cast<double>(d.bn)) > 1e-9)
    throw ConfigError("height: a*n and b*n must be integers");
  return d;
}

int height(const PassageGrid& grid, const ModelParams& params, int n_units,
           double r) {
  if (!(r >= 0.0)) throw ConfigError("height: level r must be >= 0");
  const DiagonalSpan d = diagonal_span(params, n_units);
  const std::int64_t D = d.an + d.bn;
  if (grid.T.rows() <= D || grid.T.cols() <= D)
    throw ConfigError("height: grid does not contain the anti-diagonal");
  for (std::int64_t k = d.bn; k >= -d.an; --k) {
    if (grid.T(d.bn - k, d.an + k) <= r) return static_cast<int>(k);
  }
  // a zero-weight staircase always reaches the anti-diagonal
  throw AccuracyError("height: no k with T <= r found (corrupt grid)");
}

bool check_event_duality(const PassageGrid& grid, const ModelParams& params,
                         int n_units, int k, double r) {
  if (!(r >= 0.0)) throw ConfigError("check_event_duality: r must be >= 0");
  const DiagonalSpan d = diagonal_span(params, n_units);
  const std::int64_t D = d.an + d.bn;
  if (grid.T.rows() <= D || grid.T.cols() <= D)
    throw ConfigError("check_event_duality: grid too small");
  const double t = halfline_time_extended(grid,
                                          static_cast<int>(d.bn - k),
                                          static_cast<int>(d.an + k));
  const bool lhs = t > r;
  const bool rhs = height(grid, params, n_units, r) < k;
  return lhs == rhs;
}

int cluster_height(const ModelParams& params, int n_units, double r,
                   std::uint64_t seed, std::uint64_t replica) {
  if (!(r >= 0.0)) throw ConfigError("cluster_height: level r must be >= 0");
  const DiagonalSpan d = diagonal_span(params, n_units);
  const std::int64_t D = d.an + d.bn;
  const std::uint64_t thresh = bernoulli_threshold(params.bernoulli_p());

  // frontier on anti-diagonal dd: vertices (i, dd-i) with T <= r, i ascending
  std::vector<std::int64_t> idx, idx_next;
  std::vector<double> val, val_next;
  idx.push_back(0);
  val.push_back(0.0);
  idx_next.reserve(64);
  val_next.reserve(64);

  auto push_min = [&](std::int64_t i, double t) {
    if (!idx_next.empty() && idx_next.back() == i) {
      if (t < val_next.back()) val_next.back() = t;
    } else {
      idx_next.push_back(i);
      val_next.push_back(t);
    }
  };

  for (std::int64_t dd = 0; dd < D; ++dd) {
    idx_next.clear();
    val_next.clear();
    for (std::size_t m = 0; m < idx.size(); ++m) {
      const std::int64_t i = idx[m];
      const double T = val[m];
      EdgePair e = edges_at(params, seed, replica, i, dd - i, thresh);
      // vertical candidate keeps index i, horizontal moves to i+1; parents
      // are sorted in i, so emitting (i) then (i+1) keeps the output sorted
      const double tv = T + e.vert;
      if (tv <= r) push_min(i, tv);
      const double th = T + e.horiz;
      if (th <= r) push_min(i + 1, th);
    }
    idx.swap(idx_next);
    val.swap(val_next);
  }
  if (idx.empty())
    throw AccuracyError("cluster_height: frontier died (corrupt state)");
  return static_cast<int>(d.bn - idx.front());
}

}  // namespace befpp
