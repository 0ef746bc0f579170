#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <map>

#include "airylab/stats.hpp"
#include "airylab/walks.hpp"

using namespace airylab;

TEST_CASE("single geometric walk is an unconditioned walk from 0") {
  const double beta = 2.0;
  double sum = 0;
  const int horizon = 50, reps = 2000;
  for (int r = 0; r < reps; ++r) {
    WalkEnsemble e = sample_ni_geometric(1, beta, horizon, 31, static_cast<std::uint64_t>(r));
    REQUIRE(e.value(1, 0) == 0.0);
    sum += e.value(1, horizon);
  }
  double mean_inc = sum / (reps * horizon);
  // increment mean 1/beta, sd of estimate ~ sqrt(var/N)
  double sd = std::sqrt((1.0 / beta) * (1.0 + 1.0 / beta) / (reps * horizon));
  REQUIRE(std::abs(mean_inc - 0.5) < 5 * sd);
}

TEST_CASE("ensemble invariants hold on every sample") {
  for (std::uint64_t r = 0; r < 50; ++r) {
    WalkEnsemble e = sample_ni_geometric(4, 1.0, 10, 77, r);
    e.assert_invariants();
  }
}

TEST_CASE("rejection sampler accepts immediately for a single walk") {
  std::int64_t proposals = 0;
  WalkEnsemble e = sample_ni_geometric_rejection(1, 1.0, 4, 50, 5, 0, &proposals);
  REQUIRE(proposals == 1);
  e.assert_invariants();
}

TEST_CASE("rejection bias shrinks as the guard horizon grows") {
  // TV distance between guard 20 and guard 40 laws should dominate the
  // distance between guard 40 and guard 80 laws
  auto law_at = [&](int guard, std::uint64_t salt) {
    std::map<std::int64_t, std::int64_t> counts;
    const std::int64_t reps = 30000;
    for (std::int64_t r = 0; r < reps; ++r) {
      WalkEnsemble e = sample_ni_geometric_rejection(2, 1.0, 3, guard, 1000 + salt,
                                                     static_cast<std::uint64_t>(r));
      std::int64_t key = static_cast<std::int64_t>(e.value(1, 3)) * 4096 +
                         static_cast<std::int64_t>(e.value(2, 3));
      ++counts[key];
    }
    return DiscreteLaw::from_counts(counts);
  };
  DiscreteLaw g20 = law_at(20, 0), g40 = law_at(40, 1), g80 = law_at(80, 2);
  double d1 = tv_distance(g20.pmf.size() ? g20 : g20, g40);
  double d2 = tv_distance(g40, g80);
  // d2 should not exceed d1 beyond Monte Carlo noise
  REQUIRE(d2 < d1 + 0.02);
}

TEST_CASE("passage identity: insertion differences match rejection law (small run)") {
  const int n = 2, horizon = 3, guard = 100;
  const std::int64_t reps = 20000;
  std::map<std::int64_t, std::int64_t> lhs, rhs;
  for (std::int64_t r = 0; r < reps; ++r) {
    WalkEnsemble a = sample_ni_geometric(n, 1.0, horizon, 421, static_cast<std::uint64_t>(r));
    ++lhs[static_cast<std::int64_t>(a.value(1, horizon)) * 4096 +
          static_cast<std::int64_t>(a.value(2, horizon))];
    WalkEnsemble b =
        sample_ni_geometric_rejection(n, 1.0, horizon, guard, 422, static_cast<std::uint64_t>(r));
    ++rhs[static_cast<std::int64_t>(b.value(1, horizon)) * 4096 +
          static_cast<std::int64_t>(b.value(2, horizon))];
  }
  double tv = tv_distance(DiscreteLaw::from_counts(lhs), DiscreteLaw::from_counts(rhs));
  REQUIRE(tv <= 0.035);  // 2e4-sample version of the 1e5 acceptance run
}

TEST_CASE("shear maps the all-flat walk to the all-up walk") {
  WalkEnsemble e;
  e.n = 1;
  e.model = WalkModel::GeometricNI;
  e.beta = 1.0;
  e.horizon = 6;
  e.trajectories = {{0, 0, 0, 0, 0, 0, 0}};
  WalkEnsemble x = shear_to_bernoulli(e);
  for (int s = 0; s <= x.horizon; ++s) REQUIRE(x.value(1, s) == s);
}

TEST_CASE("shear then unshear is the identity on trajectories") {
  for (std::uint64_t r = 0; r < 30; ++r) {
    WalkEnsemble p = sample_ni_geometric(3, 1.5, 12, 88, r);
    WalkEnsemble x = shear_to_bernoulli(p);
    x.assert_invariants();
    // largest time every walk's first-hit is inside the sheared horizon
    int back_horizon = 0;
    for (int T = 1; T <= p.horizon; ++T) {
      bool ok = true;
      for (int i = 1; i <= 3; ++i)
        if (T + p.value(i, T) > x.horizon) ok = false;
      if (ok) back_horizon = T;
    }
    REQUIRE(back_horizon >= 1);
    WalkEnsemble q = unshear_to_geometric(x, back_horizon);
    for (int i = 1; i <= 3; ++i)
      for (int t = 0; t <= back_horizon; ++t) REQUIRE(q.value(i, t) == p.value(i, t));
  }
}

TEST_CASE("sheared ensembles satisfy Bernoulli invariants en masse") {
  for (std::uint64_t r = 0; r < 300; ++r) {
    int n = 2 + static_cast<int>(r % 4);  // 2..5
    WalkEnsemble p = sample_ni_geometric(n, 1.0, 14, 999, r);
    WalkEnsemble x = shear_to_bernoulli(p);
    x.assert_invariants();  // throws on violation
  }
}

TEST_CASE("sheared gap law matches direct Bernoulli rejection (small run)") {
  const std::int64_t reps = 20000;
  const int s_time = 4;
  std::map<std::int64_t, std::int64_t> lhs, rhs;
  for (std::int64_t r = 0; r < reps; ++r) {
    WalkEnsemble p = sample_ni_geometric(2, 1.0, s_time + 6, 52, static_cast<std::uint64_t>(r));
    WalkEnsemble x = shear_to_bernoulli(p, s_time);
    ++lhs[static_cast<std::int64_t>(x.value(2, s_time) - x.value(1, s_time))];
    WalkEnsemble y =
        sample_ni_bernoulli_rejection(2, 1.0, s_time, 100, 53, static_cast<std::uint64_t>(r));
    ++rhs[static_cast<std::int64_t>(y.value(2, s_time) - y.value(1, s_time))];
  }
  double tv = tv_distance(DiscreteLaw::from_counts(lhs), DiscreteLaw::from_counts(rhs));
  REQUIRE(tv <= 0.035);
}

TEST_CASE("SJ all-zero grid gives constant trajectories") {
  WeightGrid g;
  g.n_cols = 5;
  g.n_rows = 4;
  g.env = EnvKind::bernoulli_sj(1.0);
  g.weights.assign(20, 0.0);
  WalkEnsemble e = sj_walks(g, 4);
  for (int k = 1; k <= 4; ++k)
    for (int m = 0; m <= 5; ++m) REQUIRE(e.value(k, m) == 4 - k);
}

TEST_CASE("SJ all-one grid gives L_k = k m") {
  WeightGrid g;
  g.n_cols = 5;
  g.n_rows = 4;
  g.env = EnvKind::bernoulli_sj(1.0);
  g.weights.assign(20, 1.0);
  auto L = sj_passage_values(g, 4);
  for (int k = 1; k <= 4; ++k)
    for (int m = 0; m <= 5; ++m)
      REQUIRE(L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)] == k * m);
}

TEST_CASE("SJ recursion equals brute force on all binary grids up to 3x3") {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      int cells = n * m;
      for (int mask = 0; mask < (1 << cells); ++mask) {
        WeightGrid g;
        g.n_cols = m;
        g.n_rows = n;
        g.env = EnvKind::bernoulli_sj(1.0);
        g.weights.resize(static_cast<std::size_t>(cells));
        for (int i = 0; i < cells; ++i) g.weights[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        auto L = sj_passage_values(g, n);
        for (int k = 1; k <= n; ++k)
          for (int mm = 1; mm <= m; ++mm)
            REQUIRE(L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mm)] ==
                    sj_bruteforce(g, k, mm));
      }
    }
}

TEST_CASE("SJ recursion equals brute force on random 4x4 binary grids") {
  RngStream master(5150);
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream s = master.substream(static_cast<std::uint64_t>(trial));
    WeightGrid g;
    g.n_cols = 4;
    g.n_rows = 4;
    g.env = EnvKind::bernoulli_sj(1.0);
    for (int i = 0; i < 16; ++i) g.weights.push_back(static_cast<double>(s.next_u64() & 1));
    auto L = sj_passage_values(g, 4);
    for (int k = 1; k <= 4; ++k)
      for (int m = 1; m <= 4; ++m)
        REQUIRE(L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)] ==
                sj_bruteforce(g, k, m));
  }
}

TEST_CASE("SJ trajectories behave like ordered Bernoulli walks") {
  for (std::uint64_t r = 0; r < 50; ++r) {
    WeightGrid g = sample_weight_grid(EnvKind::bernoulli_sj(0.8), 5, 12, 313, r);
    WalkEnsemble e = sj_walks(g, 5);
    for (int k = 1; k <= 5; ++k) {
      REQUIRE(e.value(k, 0) == 5 - k);
      for (int m = 1; m <= 12; ++m) {
        double inc = e.value(k, m) - e.value(k, m - 1);
        REQUIRE((inc == 0.0 || inc == 1.0));
      }
    }
    for (int m = 0; m <= 12; ++m)
      for (int k = 2; k <= 5; ++k) REQUIRE(e.value(k, m) < e.value(k - 1, m));
  }
}

TEST_CASE("guards and argument errors") {
  REQUIRE_THROWS_AS(sample_ni_geometric(0, 1.0, 5, 1), argument_error);
  REQUIRE_THROWS_AS(sample_ni_geometric(2, -1.0, 5, 1), argument_error);
  REQUIRE_THROWS_AS(sample_ni_geometric_rejection(4, 1.0, 3, 50, 1), argument_error);
  REQUIRE_THROWS_AS(sample_ni_geometric_rejection(2, 1.0, 3, 2, 1), argument_error);
  WeightGrid g;
  g.n_cols = 2;
  g.n_rows = 2;
  g.env = EnvKind::bernoulli_sj(1.0);
  g.weights = {0.5, 0, 0, 1};
  REQUIRE_THROWS_AS(sj_passage_values(g, 2), argument_error);
}

TEST_CASE("rejection acceptance probability is positive and stable") {
  auto estimate = [&](std::uint64_t seed) {
    std::int64_t total = 0;
    const std::int64_t reps = 2000;
    for (std::int64_t r = 0; r < reps; ++r) {
      std::int64_t proposals = 0;
      sample_ni_geometric_rejection(2, 1.0, 3, 40, seed, static_cast<std::uint64_t>(r),
                                    &proposals);
      total += proposals;
    }
    return static_cast<double>(reps) / static_cast<double>(total);
  };
  double p1 = estimate(10), p2 = estimate(20);
  INFO("estimated acceptance probability " << p1);
  REQUIRE(p1 > 0.0);
  REQUIRE(p1 < 1.0);
  REQUIRE(std::abs(p1 - p2) < 0.05);  // deterministic in distribution
}

TEST_CASE("SJ walk trajectories match the Bernoulli ensemble in law") {
  const std::int64_t reps = 20000;
  const int m = 4, n = 2;
  std::map<std::int64_t, std::int64_t> lhs, rhs;
  for (std::int64_t r = 0; r < reps; ++r) {
    WeightGrid g =
        sample_weight_grid(EnvKind::bernoulli_sj(1.0), n, m, 808, static_cast<std::uint64_t>(r));
    WalkEnsemble e = sj_walks(g, n);
    // joint law of (bottom, top) at time m; SJ indexes walks from the top
    ++lhs[static_cast<std::int64_t>(e.value(2, m)) * 4096 +
          static_cast<std::int64_t>(e.value(1, m))];
    WalkEnsemble b =
        sample_ni_bernoulli_rejection(n, 1.0, m, 100, 809, static_cast<std::uint64_t>(r));
    ++rhs[static_cast<std::int64_t>(b.value(1, m)) * 4096 +
          static_cast<std::int64_t>(b.value(2, m))];
  }
  double tv = tv_distance(DiscreteLaw::from_counts(lhs), DiscreteLaw::from_counts(rhs));
  REQUIRE(tv <= 0.035);
}
