#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "airylab/env.hpp"
#include "airylab/parallel.hpp"

using namespace airylab;

TEST_CASE("grid sampling is deterministic in (env, dims, seed)") {
  WeightGrid a = sample_weight_grid(EnvKind::geometric(1.0), 6, 8, 1234);
  WeightGrid b = sample_weight_grid(EnvKind::geometric(1.0), 6, 8, 1234);
  REQUIRE(a.weights == b.weights);
  WeightGrid c = sample_weight_grid(EnvKind::geometric(1.0), 6, 8, 1235);
  REQUIRE(a.weights != c.weights);
}

TEST_CASE("replica split equals serial order under parallel sampling") {
  auto serial = parallel_map_replicas<WeightGrid>(
      8, [&](std::int64_t r) {
        return sample_weight_grid(EnvKind::geometric(0.5), 4, 4, 99, static_cast<std::uint64_t>(r));
      },
      1);
  auto parallel = parallel_map_replicas<WeightGrid>(
      8, [&](std::int64_t r) {
        return sample_weight_grid(EnvKind::geometric(0.5), 4, 4, 99, static_cast<std::uint64_t>(r));
      },
      4);
  for (std::size_t i = 0; i < serial.size(); ++i)
    REQUIRE(serial[i].weights == parallel[i].weights);
  REQUIRE(serial[0].weights != serial[1].weights);
}

TEST_CASE("large-odds geometric mean collapses") {
  WeightGrid g = sample_weight_grid(EnvKind::geometric(1e6), 100, 100, 7);
  REQUIRE(g.total() / 1e4 <= 2e-6 + 1e-4);  // mean 1/beta = 1e-6
}

TEST_CASE("Bernoulli grid mean is beta/(1+beta)") {
  WeightGrid g = sample_weight_grid(EnvKind::bernoulli_sj(1.0), 100, 100, 7);
  for (double w : g.weights) REQUIRE((w == 0.0 || w == 1.0));
  REQUIRE(std::abs(g.total() / 1e4 - 0.5) < 0.02);
}

TEST_CASE("geometric P(0) near 1/2 at beta = 1, moments within 5 sigma") {
  WeightGrid g = sample_weight_grid(EnvKind::geometric(1.0), 320, 320, 8);
  int zeros = 0;
  double m1 = 0, m2 = 0;
  for (double w : g.weights) {
    if (w == 0.0) ++zeros;
    m1 += w;
    m2 += w * w;
  }
  double N = static_cast<double>(g.weights.size());
  REQUIRE(std::abs(zeros / N - 0.5) < 0.01);
  m1 /= N;
  m2 = m2 / N - m1 * m1;
  // mean 1/beta = 1, variance (1+beta)/beta^2 = 2
  REQUIRE(std::abs(m1 - 1.0) < 5 * std::sqrt(2.0 / N));
  REQUIRE(std::abs(m2 - 2.0) < 0.1);
}

TEST_CASE("exponential marginal moments") {
  WeightGrid g = sample_weight_grid(EnvKind::exponential(), 200, 200, 21);
  double m1 = g.total() / static_cast<double>(g.weights.size());
  double m2 = 0;
  for (double w : g.weights) m2 += w * w;
  m2 /= static_cast<double>(g.weights.size());
  // mean 1, second moment 2, 5 sigma windows at 4e4 samples
  REQUIRE(std::abs(m1 - 1.0) < 5.0 / 200.0);
  REQUIRE(std::abs(m2 - 2.0) < 0.12);
}

TEST_CASE("coupled grids have exact entrywise bounds") {
  auto [geo, expo] = sample_coupled_grids(1e-3, 100, 100, 3);
  double max_e = 0;
  for (double e : expo.weights) max_e = std::max(max_e, e);
  for (std::size_t i = 0; i < geo.weights.size(); ++i) {
    double bg = 1e-3 * geo.weights[i];
    double e = expo.weights[i];
    REQUIRE(std::abs(bg - e) <= 1e-3 * (1.0 + e) + 1e-12);
    REQUIRE(e <= 1e-3 * (geo.weights[i] + 1.0) + 1e-12);
  }
  REQUIRE(1e-3 * (1.0 + max_e) < 0.2);  // boundary sanity at small odds
}

TEST_CASE("planar Poisson counts match the window area") {
  double total = 0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    PointField f = sample_point_field(EnvKind::poisson_plane(), {0, 4, 0, 1}, 5,
                                      static_cast<std::uint64_t>(r));
    total += static_cast<double>(f.points.size());
  }
  REQUIRE(std::abs(total / reps - 4.0) < 0.1);
}

TEST_CASE("degenerate window yields an empty field") {
  PointField f = sample_point_field(EnvKind::poisson_plane(), {0, 0, 0, 1}, 5);
  REQUIRE(f.points.empty());
}

TEST_CASE("Poisson line event totals match rate x lines x horizon") {
  double total = 0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    PointField f = sample_point_field(EnvKind::poisson_lines(), {0, 2, 0, 5}, 6,
                                      static_cast<std::uint64_t>(r));
    total += static_cast<double>(f.points.size());
  }
  REQUIRE(std::abs(total / reps - 10.0) < 0.2);
}

TEST_CASE("point fields have distinct coordinates") {
  PointField f = sample_point_field(EnvKind::poisson_plane(), {0, 50, 0, 1}, 13);
  std::set<double> xs, ys;
  for (auto& [x, y] : f.points) {
    REQUIRE(xs.insert(x).second);
    REQUIRE(ys.insert(y).second);
    REQUIRE((x >= 0 && x <= 50 && y >= 0 && y <= 1));
  }
}

TEST_CASE("argument errors") {
  REQUIRE_THROWS_AS(sample_weight_grid(EnvKind::geometric(1.0), 0, 3, 1), argument_error);
  REQUIRE_THROWS_AS(sample_coupled_grids(-1.0, 2, 2, 1), argument_error);
  REQUIRE_THROWS_AS(EnvKind::geometric(0.0), argument_error);
  REQUIRE_THROWS_AS(
      sample_point_field(EnvKind::poisson_lines(), {0, -1, 0, 2}, 1), argument_error);
}
