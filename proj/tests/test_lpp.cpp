#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "airylab/lpp.hpp"
#include "airylab/rng.hpp"

using namespace airylab;

namespace {
WeightGrid make_grid(int n_cols, int n_rows, const std::vector<double>& rows_bottom_up) {
  WeightGrid g;
  g.n_cols = n_cols;
  g.n_rows = n_rows;
  g.weights = rows_bottom_up;
  g.env = EnvKind::geometric(1.0);
  return g;
}
}  // namespace

TEST_CASE("single cell grid") {
  WeightGrid g = make_grid(1, 1, {7.0});
  PassageProfile p = passage_profile_rsk(g, 1, {1});
  REQUIRE(p.value(1, 0) == 7.0);
}

TEST_CASE("3x3 fixture: single and double path values") {
  // rows bottom to top: (1,0,2), (0,3,0), (2,0,1)
  WeightGrid g = make_grid(3, 3, {1, 0, 2, 0, 3, 0, 2, 0, 1});
  PassageProfile p = passage_profile_rsk(g, 3, {3});
  REQUIRE(p.value(1, 0) == 5.0);
  REQUIRE(p.value(2, 0) == 7.0);
  REQUIRE(p.value(3, 0) == 9.0);
  REQUIRE(passage_profile_bruteforce(g, 1, 3) == 5.0);
  REQUIRE(passage_profile_bruteforce(g, 2, 3) == 7.0);
}

TEST_CASE("k beyond min(m, n) returns the total sum") {
  RngStream s(5);
  WeightGrid g;
  g.n_cols = 4;
  g.n_rows = 3;
  g.env = EnvKind::geometric(1.0);
  for (int i = 0; i < 12; ++i) g.weights.push_back(static_cast<double>(s.next_geometric(1.0)));
  PassageProfile p = passage_profile_rsk(g, 3, {2, 4});
  // at m = 2, k = 3 > min(2,3): equals the first-two-column sum
  double two_cols = 0;
  for (int row = 1; row <= 3; ++row) two_cols += g(1, row) + g(2, row);
  REQUIRE(p.value(3, 0) == two_cols);
  REQUIRE(p.value(3, 1) == g.total());
  REQUIRE(p.value(5, 1) == g.total());  // clamped above k_max
}

TEST_CASE("2x2 all-ones forced pair") {
  WeightGrid g = make_grid(2, 2, {1, 1, 1, 1});
  REQUIRE(passage_profile_bruteforce(g, 2, 2) == 4.0);
  PassageProfile p = passage_profile_rsk(g, 2, {2});
  REQUIRE(p.value(2, 0) == 4.0);
}

TEST_CASE("insertion equals brute force exactly on random integer grids") {
  RngStream master(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    RngStream s = master.substream(static_cast<std::uint64_t>(trial));
    int n = 2 + static_cast<int>(s.next_u64() % 3);  // rows 2..4
    int m = 2 + static_cast<int>(s.next_u64() % 3);  // cols 2..4
    WeightGrid g;
    g.n_cols = m;
    g.n_rows = n;
    g.env = EnvKind::geometric(1.0);
    for (int i = 0; i < n * m; ++i)
      g.weights.push_back(static_cast<double>(s.next_u64() % 4));
    PassageProfile p = passage_profile_rsk(g, n, {m});
    for (int k = 1; k <= n; ++k)
      REQUIRE(p.value(k, 0) == passage_profile_bruteforce(g, k, m));
  }
}

TEST_CASE("insertion matches brute force on real weights including negatives") {
  RngStream master(77);
  for (int trial = 0; trial < 300; ++trial) {
    RngStream s = master.substream(static_cast<std::uint64_t>(trial));
    int n = 2 + static_cast<int>(s.next_u64() % 3);
    int m = 2 + static_cast<int>(s.next_u64() % 3);
    WeightGrid g;
    g.n_cols = m;
    g.n_rows = n;
    g.env = EnvKind::brownian_lines();
    for (int i = 0; i < n * m; ++i) g.weights.push_back(3.0 * s.next_uniform() - 1.0);
    PassageProfile p = passage_profile_rsk(g, n, {m});
    for (int k = 1; k <= n; ++k) {
      double expect = passage_profile_bruteforce(g, k, m);
      REQUIRE(std::abs(p.value(k, 0) - expect) < 1e-9);
    }
  }
}

TEST_CASE("profile invariants hold on sampled geometric grids") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    WeightGrid g = sample_weight_grid(EnvKind::geometric(0.7), 5, 12, 100 + seed);
    PassageProfile p = passage_profile_rsk(g, 5, full_m_range(12));
    p.assert_invariants();  // increments nonincreasing in k, monotone in m
    // superadditivity: L_k >= L_{k-1}
    for (std::size_t mi = 0; mi < p.m_values.size(); ++mi)
      for (int k = 1; k <= 5; ++k) REQUIRE(p.value(k, mi) >= p.value(k - 1, mi));
  }
}

TEST_CASE("argument errors") {
  WeightGrid g = make_grid(2, 2, {1, 1, 1, 1});
  REQUIRE_THROWS_AS(passage_profile_rsk(g, 3, {2}), argument_error);
  REQUIRE_THROWS_AS(passage_profile_rsk(g, 0, {2}), argument_error);
  WeightGrid big = make_grid(8, 8, std::vector<double>(64, 1.0));
  REQUIRE_THROWS_AS(passage_profile_bruteforce(big, 1, 8), argument_error);
}

TEST_CASE("single Poisson line counts points") {
  PointField f;
  f.env = EnvKind::poisson_lines();
  f.points = {{0.3, 1}, {0.7, 1}, {1.4, 1}};
  PassageProfile p = passage_profile_poisson_exact(f, 1, 1, {0.5, 1.0, 2.0});
  REQUIRE(p.value(1, 0) == 1.0);
  REQUIRE(p.value(1, 1) == 2.0);
  REQUIRE(p.value(1, 2) == 3.0);
}

TEST_CASE("two lines with points only on the top line") {
  PointField f;
  f.env = EnvKind::poisson_lines();
  f.points = {{0.2, 2}, {0.9, 2}, {1.1, 2}};
  PassageProfile p = passage_profile_poisson_exact(f, 2, 1, {1.0, 2.0});
  REQUIRE(p.value(1, 0) == 2.0);
  REQUIRE(p.value(1, 1) == 3.0);
}

TEST_CASE("exact Poisson passage equals fine-mesh passage") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PointField f = sample_point_field(EnvKind::poisson_lines(), {0, 2, 0, 3}, seed);
    PassageProfile exact = passage_profile_poisson_exact(f, 3, 2, {1.0, 2.0});
    // fine mesh with at most one point per column
    double dt = 2.0;
    for (auto& [t, line] : f.points) (void)t;
    bool ok = false;
    while (!ok) {
      dt /= 2;
      std::vector<int> cnt(static_cast<std::size_t>(std::ceil(2.0 / dt)) + 1, 0);
      ok = true;
      for (auto& [t, line] : f.points)
        if (++cnt[static_cast<std::size_t>(t / dt)] > 1) ok = false;
      REQUIRE(dt > 1e-9);
    }
    LineField lf = line_field_from_points(f, 3, 2.0, dt);
    PassageProfile mesh = passage_profile_continuous(lf, 2, {1.0, 2.0});
    for (int k = 1; k <= 2; ++k)
      for (std::size_t mi = 0; mi < 2; ++mi)
        REQUIRE(exact.value(k, mi) == mesh.value(k, mi));
  }
}

TEST_CASE("single Brownian line reproduces the path increment sums") {
  LineField f = sample_line_field(EnvKind::brownian_lines(), 1, 1.0, 0.125, 3);
  PassageProfile p = passage_profile_continuous(f, 1, {0.5, 1.0});
  double sum_half = 0, sum_full = 0;
  for (int c = 0; c < 4; ++c) sum_half += f.increments[0][static_cast<std::size_t>(c)];
  for (int c = 0; c < 8; ++c) sum_full += f.increments[0][static_cast<std::size_t>(c)];
  REQUIRE(std::abs(p.value(1, 0) - sum_half) < 1e-12);
  REQUIRE(std::abs(p.value(1, 1) - sum_full) < 1e-12);
}

TEST_CASE("Brownian passage values increase under mesh refinement") {
  LineField fine = sample_line_field(EnvKind::brownian_lines(), 3, 1.0, 1.0 / 64, 9);
  LineField mid = coarsen_line_field(fine);
  LineField coarse = coarsen_line_field(mid);
  PassageProfile pf = passage_profile_continuous(fine, 2, {1.0});
  PassageProfile pm = passage_profile_continuous(mid, 2, {1.0});
  PassageProfile pc = passage_profile_continuous(coarse, 2, {1.0});
  for (int k = 1; k <= 2; ++k) {
    REQUIRE(pc.value(k, 0) <= pm.value(k, 0) + 1e-12);
    REQUIRE(pm.value(k, 0) <= pf.value(k, 0) + 1e-12);
  }
}

TEST_CASE("empty planar field gives zero passage values") {
  PointField f;
  f.env = EnvKind::poisson_plane();
  PassageProfile p = passage_planar(f, 2, {1.0, 4.0});
  REQUIRE(p.value(1, 0) == 0.0);
  REQUIRE(p.value(2, 1) == 0.0);
}

TEST_CASE("single planar point on the path") {
  PointField f;
  f.env = EnvKind::poisson_plane();
  f.points = {{0.5, 0.5}};
  PassageProfile p = passage_planar(f, 1, {1.0});
  REQUIRE(p.value(1, 0) == 1.0);
}

TEST_CASE("planar passage stabilizes under extra refinement") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    PointField f = sample_point_field(EnvKind::poisson_plane(), {0, 4, 0, 1}, seed);
    PassageProfile a = passage_planar(f, 2, {4.0}, 0);
    PassageProfile b = passage_planar(f, 2, {4.0}, 1);
    PassageProfile c = passage_planar(f, 2, {4.0}, 2);
    for (int k = 1; k <= 2; ++k) {
      REQUIRE(a.value(k, 0) == b.value(k, 0));
      REQUIRE(b.value(k, 0) == c.value(k, 0));
    }
  }
}

TEST_CASE("planar rank compression equals the dense mesh route") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    PointField f = sample_point_field(EnvKind::poisson_plane(), {0, 6, 0, 1}, seed);
    PassageProfile dense = passage_planar(f, 3, {6.0}, 0, 1 << 22);
    PassageProfile ranks = passage_planar(f, 3, {6.0}, 0, 1);
    for (int k = 1; k <= 3; ++k) REQUIRE(dense.value(k, 0) == ranks.value(k, 0));
  }
}
