#include <doctest.h>

#include <cmath>
#include <limits>

#include "befpp/ensemble.hpp"
#include "befpp/lattice.hpp"

using namespace befpp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// independent oracle: scan k from the top of the anti-diagonal using
// enumerated passage times
int height_by_enumeration(const LatticeSample& s, const ModelParams& p,
                          int n_units, double r) {
  const DiagonalSpan d = diagonal_span(p, n_units);
  for (std::int64_t k = d.bn; k >= -d.an; --k) {
    if (brute_force_passage_time(s, static_cast<int>(d.bn - k),
                                 static_cast<int>(d.an + k)) <= r)
      return static_cast<int>(k);
  }
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("model params validation") {
  CHECK_THROWS_AS((ModelParams{0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{1.0, -2.0}.validate()), ConfigError);
  ModelParams ok{1.0, 3.0};
  ok.validate();
  CHECK(ok.bernoulli_p() == doctest::Approx(0.75));
}

TEST_CASE("exactly one outgoing edge is free at every vertex") {
  for (ModelParams p : {ModelParams{1.0, 1.0}, ModelParams{1.0, 3.0}}) {
    LatticeSample s = sample_lattice(p, 40, 40, 99);
    for (int i = 0; i < s.width; ++i)
      for (int j = 0; j < s.height; ++j) {
        const bool hz = s.horiz(i, j) == 0.0;
        const bool vz = s.vert(i, j) == 0.0;
        CHECK(hz != vz);
      }
  }
}

TEST_CASE("bernoulli fraction matches p within 4 standard errors") {
  ModelParams p{1.0, 1.0};
  const int side = 317;  // ~1e5 vertices
  LatticeSample s = sample_lattice(p, side, side, 7);
  const double n = static_cast<double>(side) * side;
  double zero_horiz = 0.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (s.horiz(i, j) == 0.0) zero_horiz += 1.0;
  const double phat = zero_horiz / n;
  const double se = std::sqrt(0.5 * 0.5 / n);
  CHECK(std::abs(phat - 0.5) <= 4.0 * se);
}

TEST_CASE("positive vertical times have mean 1/a within 4 standard errors") {
  ModelParams p{1.0, 3.0};
  const int side = 317;
  LatticeSample s = sample_lattice(p, side, side, 11);
  double sum = 0.0, sumsq = 0.0, cnt = 0.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (s.vert(i, j) > 0.0) {
        sum += s.vert(i, j);
        sumsq += s.vert(i, j) * s.vert(i, j);
        cnt += 1.0;
      }
  const double mean = sum / cnt;
  const double var = sumsq / cnt - mean * mean;
  CHECK(std::abs(mean - 1.0) <= 4.0 * std::sqrt(var / cnt));
}

TEST_CASE("seed determinism and replica independence") {
  ModelParams p{1.0, 2.0};
  LatticeSample s1 = sample_lattice(p, 12, 9, 42, 3);
  LatticeSample s2 = sample_lattice(p, 12, 9, 42, 3);
  CHECK((s1.horiz == s2.horiz).all());
  CHECK((s1.vert == s2.vert).all());
  LatticeSample s3 = sample_lattice(p, 12, 9, 42, 4);
  CHECK_FALSE((s1.horiz == s3.horiz).all());
}

TEST_CASE("dimension preconditions") {
  ModelParams p;
  CHECK_THROWS_AS(sample_lattice(p, 0, 5, 1), ConfigError);
  CHECK_THROWS_AS(sample_lattice(p, 5, -1, 1), ConfigError);
}

TEST_CASE("origin has zero passage time") {
  LatticeSample s = sample_lattice({1.0, 1.0}, 6, 6, 5);
  PassageGrid g = passage_time_grid(s);
  CHECK(g.T(0, 0) == 0.0);
}

TEST_CASE("two-path example by hand") {
  LatticeSample s;
  s.width = 2;
  s.height = 2;
  s.horiz = Eigen::ArrayXXd::Zero(2, 2);
  s.vert = Eigen::ArrayXXd::Zero(2, 2);
  s.horiz(0, 0) = 0.0;
  s.vert(1, 0) = 2.0;
  s.vert(0, 0) = 1.5;
  s.horiz(0, 1) = 0.0;
  CHECK(brute_force_passage_time(s, 1, 1) == doctest::Approx(1.5));
  CHECK(brute_force_passage_time(s, 0, 0) == 0.0);
}

TEST_CASE("zero first row forces zero passage along the axis") {
  LatticeSample s = sample_lattice({1.0, 1.0}, 8, 3, 21);
  for (int i = 0; i < 8; ++i) s.horiz(i, 0) = 0.0;
  PassageGrid g = passage_time_grid(s);
  for (int i = 0; i < 8; ++i) CHECK(g.T(i, 0) == 0.0);
}

TEST_CASE("DP equals path enumeration exactly") {
  ModelParams p{1.0, 1.0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LatticeSample s = sample_lattice(p, 7, 6, seed);
    PassageGrid g = passage_time_grid(s);
    CHECK(g.T(6, 5) == brute_force_passage_time(s, 6, 5));
    CHECK(g.T(4, 4) == brute_force_passage_time(s, 4, 4));
  }
}

TEST_CASE("enumeration guard") {
  LatticeSample s = sample_lattice({1.0, 1.0}, 12, 12, 3);
  CHECK_THROWS_AS(brute_force_passage_time(s, 9, 8), ConfigError);
}

TEST_CASE("half-line time") {
  ModelParams p{1.0, 1.0};
  LatticeSample s = sample_lattice(p, 7, 7, 17);
  PassageGrid g = passage_time_grid(s);

  SUBCASE("n=0 reduces to a single point") {
    CHECK(halfline_time(g, 0, 4) == g.T(0, 4));
  }
  SUBCASE("equals enumeration minimum on D_{3,2}") {
    double best = kInf;
    for (int i = 0; i <= 3; ++i)
      best = std::min(best, brute_force_passage_time(s, i, 5 - i));
    CHECK(halfline_time(g, 3, 2) == best);
  }
  SUBCASE("m=0 with a reachable zero path") {
    // on the full anti-diagonal the zero staircase gives time zero
    CHECK(halfline_time(g, 6, 0) == 0.0);
  }
  SUBCASE("bounds checking") {
    CHECK_THROWS_AS(halfline_time(g, 8, 0), ConfigError);
    CHECK_THROWS_AS(halfline_time(g, 3, 5), ConfigError);
  }
}

TEST_CASE("height basics") {
  ModelParams p{1.0, 1.0};

  SUBCASE("large r saturates at b*n") {
    LatticeSample s = sample_lattice(p, 9, 9, 3);
    PassageGrid g = passage_time_grid(s);
    CHECK(height(g, p, 4, 1e9) == 4);
  }
  SUBCASE("n=1 range bound") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      LatticeSample s = sample_lattice(p, 3, 3, seed);
      PassageGrid g = passage_time_grid(s);
      const int h = height(g, p, 1, 0.2);
      CHECK(h >= -1);
      CHECK(h <= 1);
    }
  }
  SUBCASE("equals enumeration scan at n=8") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      LatticeSample s = sample_lattice(p, 17, 17, seed);
      PassageGrid g = passage_time_grid(s);
      CHECK(height(g, p, 8, 0.3) == height_by_enumeration(s, p, 8, 0.3));
    }
  }
  SUBCASE("non-integral a*n is rejected") {
    ModelParams q{0.5, 1.0};
    LatticeSample s = sample_lattice(q, 9, 9, 3);
    PassageGrid g = passage_time_grid(s);
    CHECK_THROWS_AS(height(g, q, 3, 0.1), ConfigError);
    CHECK(height(g, q, 4, 1e9) == 4);  // a*n = 2, b*n = 4 both integral
  }
  SUBCASE("grid too small") {
    LatticeSample s = sample_lattice(p, 5, 5, 3);
    PassageGrid g = passage_time_grid(s);
    CHECK_THROWS_AS(height(g, p, 4, 0.1), ConfigError);
  }
}

TEST_CASE("height is nondecreasing in r") {
  ModelParams p{1.0, 1.0};
  LatticeSample s = sample_lattice(p, 21, 21, 33);
  PassageGrid g = passage_time_grid(s);
  int prev = std::numeric_limits<int>::min();
  for (double r : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2}) {
    const int h = height(g, p, 10, r);
    CHECK(h >= prev);
    prev = h;
  }
}

TEST_CASE("event duality at sample level") {
  ModelParams p{1.0, 1.0};

  SUBCASE("exhaustive scan over k and r") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      LatticeSample s = sample_lattice(p, 11, 11, seed);
      PassageGrid g = passage_time_grid(s);
      for (int k = -6; k <= 7; ++k)
        for (double r : {0.0, 0.1, 1.0})
          CHECK(check_event_duality(g, p, 5, k, r));
    }
  }
  SUBCASE("out-of-range k convention") {
    LatticeSample s = sample_lattice(p, 9, 9, 5);
    PassageGrid g = passage_time_grid(s);
    CHECK(check_event_duality(g, p, 4, 5, 0.3));   // k = bn + 1
    CHECK(check_event_duality(g, p, 4, -5, 0.3));  // k = -an - 1
  }
  SUBCASE("boundary case r=0, k=H(n,0)") {
    LatticeSample s = sample_lattice(p, 13, 13, 8);
    PassageGrid g = passage_time_grid(s);
    const int k = height(g, p, 6, 0.0);
    CHECK(check_event_duality(g, p, 6, k, 0.0));
  }
}

TEST_CASE("zero level cluster stays strictly above the lower bound") {
  ModelParams p{1.0, 1.0};
  int strictly_above = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    const int h = cluster_height(p, 10, 0.0, 2024, rep);
    CHECK(h >= -10);
    CHECK(h <= 10);
    if (h > -10) ++strictly_above;
  }
  // P(H(10,0) = -10) = 2^{-20}; all replicas should sit strictly above
  CHECK(strictly_above == reps);
}

TEST_CASE("sparse frontier equals dense DP height") {
  for (ModelParams p : {ModelParams{1.0, 1.0}, ModelParams{2.0, 1.0}}) {
    const DiagonalSpan d = diagonal_span(p, 6);
    const int W = static_cast<int>(d.an + d.bn) + 1;
    for (std::uint64_t rep = 0; rep < 40; ++rep) {
      LatticeSample s = sample_lattice(p, W, W, 91, rep);
      PassageGrid g = passage_time_grid(s);
      for (double r : {0.0, 0.05, 0.3, 1.0}) {
        CHECK(cluster_height(p, 6, r, 91, rep) == height(g, p, 6, r));
      }
    }
  }
}

TEST_CASE("scaled height ensemble") {
  ModelParams p{1.0, 1.0};
  const int n = 64;

  SUBCASE("deterministic in the seed") {
    EmpiricalCDF e1 = scaled_height_ensemble(p, n, 1.0, 500, 5);
    EmpiricalCDF e2 = scaled_height_ensemble(p, n, 1.0, 500, 5);
    CHECK(e1.samples() == e2.samples());
  }
  SUBCASE("values stay within the height range bound") {
    EmpiricalCDF e = scaled_height_ensemble(p, n, 1.0, 500, 5);
    const HeightScaling sc = height_scaling(p, n, 1.0);
    for (double x : e.samples()) {
      CHECK(x <= 1.0 * n * sc.height_scale);
      CHECK(x >= -1.0 * n * sc.height_scale);
    }
  }
  SUBCASE("count precondition") {
    CHECK_THROWS_AS(scaled_height_ensemble(p, n, 1.0, 0, 5), ConfigError);
  }
}
