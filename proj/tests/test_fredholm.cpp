#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "airylab/fredholm.hpp"
#include "airylab/lpp.hpp"
#include "airylab/parallel.hpp"
#include "airylab/scaling.hpp"

using namespace airylab;

TEST_CASE("Tracy-Widom CDF tails") {
  REQUIRE(tracy_widom_cdf(6.0) >= 1.0 - 1e-6);
  REQUIRE(tracy_widom_cdf(-10.0) <= 1e-6);
}

TEST_CASE("order doubling stability at interior points") {
  for (double s : {-4.0, -2.0, 0.0, 2.0}) {
    FredholmConfig c40;
    c40.order = 40;
    FredholmConfig c80;
    c80.order = 80;
    double a = tracy_widom_cdf(s, c40);
    double b = tracy_widom_cdf(s, c80);
    REQUIRE(std::abs(a - b) < 1e-6);
    REQUIRE(std::abs(tracy_widom_cdf_checked(s, c40) - b) < 1e-9);
  }
}

TEST_CASE("CDF is monotone and within [0,1] on a grid") {
  TwTable t = tracy_widom_table(-8.0, 5.0, 0.25);
  for (std::size_t i = 0; i < t.F2.size(); ++i) {
    REQUIRE(t.F2[i] >= 0.0);
    REQUIRE(t.F2[i] <= 1.0);
    if (i) REQUIRE(t.F2[i] + 1e-9 >= t.F2[i - 1]);
  }
  // interpolation behaves like a CDF evaluator
  REQUIRE(t(-20.0) == 0.0);
  REQUIRE(t(20.0) == 1.0);
  REQUIRE(std::abs(t(0.0) - tracy_widom_cdf(0.0)) < 1e-3);
}

TEST_CASE("distribution moments match the known values") {
  TwTable t = tracy_widom_table(-10.0, 6.0, 0.05);
  Moments m = tracy_widom_moments(t);
  REQUIRE(std::abs(m.mean - (-1.771087)) < 0.01);
  REQUIRE(std::abs(m.variance - 0.813195) < 0.01);
}

TEST_CASE("configuration invariants") {
  FredholmConfig bad;
  bad.order = 4;
  REQUIRE_THROWS_AS(tracy_widom_cdf(0.0, bad), config_error);
  bad.order = 16;
  bad.truncation = 5.0;
  REQUIRE_THROWS_AS(tracy_widom_cdf(0.0, bad), config_error);
  REQUIRE_THROWS_AS(tracy_widom_cdf(-12.0), argument_error);
}

TEST_CASE("rescaled top passage line has mean near the distribution mean") {
  // Monte Carlo mean of (L_{n,1}(n) - g) / chi at n = 200 against the
  // tabulated distribution mean; 0.3 covers the finite-size bias
  const int n = 200;
  const std::int64_t reps = 2000;
  ScalingParams p = scaling_params(ModelTag::GeometricLPP, n, 1.0, n);
  auto vals = parallel_map_replicas<double>(
      reps,
      [&](std::int64_t rep) {
        WeightGrid g = sample_weight_grid(EnvKind::geometric(1.0), n, n, 515,
                                          static_cast<std::uint64_t>(rep));
        PassageProfile prof = passage_profile_rsk(g, 1, {n});
        return (prof.value(1, 0) - p.g) / p.chi;
      },
      0);
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(reps);
  TwTable t = tracy_widom_table(-10.0, 6.0, 0.1);
  Moments m = tracy_widom_moments(t);
  REQUIRE(std::abs(mean - m.mean) < 0.3);
}

TEST_CASE("planar Poisson top line approaches the same limit law") {
  double s = 600;
  ScalingParams p = scaling_params(ModelTag::PoissonPlane, 0, 0, s);
  auto vals = parallel_map_replicas<double>(
      400,
      [&](std::int64_t rep) {
        PointField f = sample_point_field(EnvKind::poisson_plane(), {0, s, 0, 1}, 8181,
                                          static_cast<std::uint64_t>(rep));
        PassageProfile prof = passage_planar(f, 1, {s});
        return (prof.value(1, 0) - p.g) / p.chi;
      },
      0);
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  REQUIRE(std::abs(mean - (-1.771087)) < 0.3);
}
