#pragma once

#include <cmath>
#include <cstdint>

namespace befpp {

// Counter-based random bits: every draw is a pure function of
// (seed, replica, vertex).  Replicas are reproducible independently of
// evaluation order or thread count, and lattice weights can be generated
// on demand for sparse exploration without storing the lattice.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t vertex_key(std::uint64_t seed, std::uint64_t replica,
                                std::int64_t i, std::int64_t j) {
  std::uint64_t cell = (static_cast<std::uint64_t>(i) << 32) ^
                       static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
  return mix64(seed ^ mix64(replica ^ mix64(cell)));
}

// uniform in [0,1) with 53 random bits
inline double u01(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

struct VertexDraw {
  bool xi;            // true: vertical edge carries the exponential
  double exp_unit;    // unit-rate exponential for the non-zero edge
};

inline VertexDraw vertex_draw(std::uint64_t seed, std::uint64_t replica,
                              std::int64_t i, std::int64_t j,
                              std::uint64_t bernoulli_threshold) {
  std::uint64_t k = vertex_key(seed, replica, i, j);
  std::uint64_t w1 = mix64(k);
  std::uint64_t w2 = mix64(k ^ 0xD1B54A32D192ED03ull);
  return {w1 < bernoulli_threshold, -std::log1p(-u01(w2))};
}

inline std::uint64_t bernoulli_threshold(double p) {
  // p in (0,1); threshold such that P(w < threshold) = p over uint64 draws
  return static_cast<std::uint64_t>(p * 0x1.0p64);
}

}  // namespace befpp
