#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/env.hpp"
#include "airylab/lpp.hpp"
#include "airylab/rng.hpp"

namespace airylab {

enum class WalkModel { GeometricNI, BernoulliNI, SJWalks, Rescaled };

// Ordered family of integer-time trajectories. GeometricNI walks start at
// P_i(0) = 1-i with zigzag nonintersection P_i(t) < P_{i-1}(t-1);
// BernoulliNI walks start at X_i(0) = i-1 with strict ordering at every
// time and {0,1} increments.
struct WalkEnsemble {
  int n = 0;
  WalkModel model = WalkModel::GeometricNI;
  double beta = 1.0;
  int horizon = 0;
  std::vector<std::vector<double>> trajectories;  // [walk][time 0..horizon]
  std::uint64_t seed = 0;

  double value(int walk, int t) const {
    return trajectories[static_cast<std::size_t>(walk - 1)][static_cast<std::size_t>(t)];
  }

  void assert_invariants() const {
    if (model == WalkModel::GeometricNI) {
      for (int i = 1; i <= n; ++i) {
        if (value(i, 0) != 1 - i) throw invariant_error("geometric walk must start at 1-i");
        for (int t = 1; t <= horizon; ++t) {
          if (value(i, t) < value(i, t - 1))
            throw invariant_error("geometric increments must be nonnegative");
          if (i >= 2 && !(value(i, t) < value(i - 1, t - 1)))
            throw invariant_error("zigzag nonintersection violated");
        }
      }
    } else if (model == WalkModel::BernoulliNI) {
      for (int i = 1; i <= n; ++i) {
        if (value(i, 0) != i - 1) throw invariant_error("Bernoulli walk must start at i-1");
        for (int t = 1; t <= horizon; ++t) {
          double inc = value(i, t) - value(i, t - 1);
          if (inc != 0 && inc != 1) throw invariant_error("Bernoulli increments must be 0/1");
        }
      }
      for (int t = 0; t <= horizon; ++t)
        for (int i = 2; i <= n; ++i)
          if (!(value(i - 1, t) < value(i, t)))
            throw invariant_error("Bernoulli walks must be strictly ordered");
    }
  }
};

// Exact nonintersecting geometric walks realized through the passage
// value identity P_k(m) = L_k(m) - L_{k-1}(m) - (k-1) applied to a fresh
// geometric weight grid.
inline WalkEnsemble sample_ni_geometric(int n, double beta, int horizon, std::uint64_t seed,
                                        std::uint64_t replica = 0, int k_max = 0) {
  require(n >= 1 && beta > 0 && horizon >= 1, "invalid ensemble parameters");
  if (k_max <= 0 || k_max > n) k_max = n;
  WeightGrid g = sample_weight_grid(EnvKind::geometric(beta), n, horizon, seed, replica);
  PassageProfile prof = passage_profile_rsk(g, k_max, full_m_range(horizon));
  WalkEnsemble e;
  e.n = k_max;
  e.model = WalkModel::GeometricNI;
  e.beta = beta;
  e.horizon = horizon;
  e.seed = seed;
  e.trajectories.assign(static_cast<std::size_t>(k_max), {});
  for (int k = 1; k <= k_max; ++k) {
    auto& tr = e.trajectories[static_cast<std::size_t>(k - 1)];
    tr.resize(static_cast<std::size_t>(horizon) + 1);
    for (int m = 0; m <= horizon; ++m)
      tr[static_cast<std::size_t>(m)] =
          prof.increment(k, static_cast<std::size_t>(m)) - (k - 1);
  }
  if (k_max == n) e.assert_invariants();
  return e;
}

// Small-instance oracle: independent geometric walks resampled until the
// zigzag graphs are nonintersecting up to guard_horizon. Conditioning
// bias decreases as guard_horizon grows.
inline WalkEnsemble sample_ni_geometric_rejection(int n, double beta, int horizon,
                                                  int guard_horizon, std::uint64_t seed,
                                                  std::uint64_t replica = 0,
                                                  std::int64_t* proposals_out = nullptr) {
  require(n >= 1 && beta > 0 && horizon >= 1, "invalid ensemble parameters");
  require(n <= 3 && horizon <= 6, "rejection oracle limited to n <= 3, horizon <= 6");
  require(guard_horizon >= horizon, "guard horizon must cover the horizon");
  RngStream base = RngStream(seed).substream(replica);
  std::vector<std::vector<double>> walks(static_cast<std::size_t>(n));
  for (std::int64_t attempt = 0;; ++attempt) {
    RngStream s = base.substream(static_cast<std::uint64_t>(attempt));
    for (auto& w : walks) w.assign(static_cast<std::size_t>(guard_horizon) + 1, 0.0);
    for (int i = 1; i <= n; ++i) walks[static_cast<std::size_t>(i - 1)][0] = 1 - i;
    bool ok = true;
    for (int t = 1; t <= guard_horizon && ok; ++t) {
      for (int i = 1; i <= n; ++i) {
        auto& w = walks[static_cast<std::size_t>(i - 1)];
        w[static_cast<std::size_t>(t)] =
            w[static_cast<std::size_t>(t - 1)] +
            static_cast<double>(s.next_geometric(beta));
        if (i >= 2 && !(w[static_cast<std::size_t>(t)] <
                        walks[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(t - 1)])) {
          ok = false;  // abort this proposal at the first zigzag intersection
          break;
        }
      }
    }
    if (ok) {
      if (proposals_out) *proposals_out = attempt + 1;
      WalkEnsemble e;
      e.n = n;
      e.model = WalkModel::GeometricNI;
      e.beta = beta;
      e.horizon = horizon;
      e.seed = seed;
      e.trajectories.assign(static_cast<std::size_t>(n), {});
      for (int i = 0; i < n; ++i)
        e.trajectories[static_cast<std::size_t>(i)] =
            std::vector<double>(walks[static_cast<std::size_t>(i)].begin(),
                                walks[static_cast<std::size_t>(i)].begin() + horizon + 1);
      e.assert_invariants();
      return e;
    }
  }
}

// Bernoulli analogue of the rejection oracle: independent Bernoulli walks
// from (0, 1, ..., n-1) kept when strictly ordered up to guard_horizon.
inline WalkEnsemble sample_ni_bernoulli_rejection(int n, double beta, int horizon,
                                                  int guard_horizon, std::uint64_t seed,
                                                  std::uint64_t replica = 0) {
  require(n >= 1 && beta > 0 && horizon >= 1, "invalid ensemble parameters");
  require(n <= 3 && horizon <= 8, "rejection oracle limited to n <= 3, horizon <= 8");
  require(guard_horizon >= horizon, "guard horizon must cover the horizon");
  RngStream base = RngStream(seed).substream(replica);
  std::vector<std::vector<double>> walks(static_cast<std::size_t>(n));
  for (std::int64_t attempt = 0;; ++attempt) {
    RngStream s = base.substream(static_cast<std::uint64_t>(attempt));
    for (auto& w : walks) w.assign(static_cast<std::size_t>(guard_horizon) + 1, 0.0);
    for (int i = 1; i <= n; ++i) walks[static_cast<std::size_t>(i - 1)][0] = i - 1;
    bool ok = true;
    for (int t = 1; t <= guard_horizon && ok; ++t) {
      for (int i = 1; i <= n; ++i) {
        auto& w = walks[static_cast<std::size_t>(i - 1)];
        w[static_cast<std::size_t>(t)] =
            w[static_cast<std::size_t>(t - 1)] + (s.next_bernoulli(beta) ? 1.0 : 0.0);
        if (i >= 2 && !(walks[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(t)] <
                        w[static_cast<std::size_t>(t)])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      WalkEnsemble e;
      e.n = n;
      e.model = WalkModel::BernoulliNI;
      e.beta = beta;
      e.horizon = horizon;
      e.seed = seed;
      e.trajectories.assign(static_cast<std::size_t>(n), {});
      for (int i = 0; i < n; ++i)
        e.trajectories[static_cast<std::size_t>(i)] =
            std::vector<double>(walks[static_cast<std::size_t>(i)].begin(),
                                walks[static_cast<std::size_t>(i)].begin() + horizon + 1);
      e.assert_invariants();
      return e;
    }
  }
}

// Shear by A = [[1,1],[1,0]]: zigzag graphs of geometric walks map to
// graphs of Bernoulli walks. The vertical connector of the jump at time
// t precedes the unit time step, so the up-step earned by time step t
// sits at s = (t-1) + P_i(t), giving X_i(s) = #{t >= 1 : t + P_i(t) <= s}.
// X then reaches height t exactly at s = t + P_i(t). Valid Bernoulli
// times are limited by the geometric horizon.
inline int shear_max_horizon(const WalkEnsemble& ens) {
  int max_valid = std::numeric_limits<int>::max();
  for (int i = 1; i <= ens.n; ++i)
    max_valid = std::min(max_valid,
                         static_cast<int>(ens.horizon + ens.value(i, ens.horizon)));
  return max_valid;
}

inline WalkEnsemble shear_to_bernoulli(const WalkEnsemble& ens, int bernoulli_horizon = 0) {
  require(ens.model == WalkModel::GeometricNI, "shear expects a geometric ensemble");
  ens.assert_invariants();
  int max_valid = shear_max_horizon(ens);
  if (bernoulli_horizon <= 0) bernoulli_horizon = max_valid;
  require(bernoulli_horizon <= max_valid, "geometric horizon too short for requested shear");
  WalkEnsemble out;
  out.n = ens.n;
  out.model = WalkModel::BernoulliNI;
  out.beta = ens.beta;
  out.horizon = bernoulli_horizon;
  out.seed = ens.seed;
  out.trajectories.assign(static_cast<std::size_t>(ens.n), {});
  for (int i = 1; i <= ens.n; ++i) {
    auto& x = out.trajectories[static_cast<std::size_t>(i - 1)];
    x.assign(static_cast<std::size_t>(bernoulli_horizon) + 1, 0.0);
    for (int s = 0; s <= bernoulli_horizon; ++s) {
      // t + P_i(t) is strictly increasing in t
      int cnt = 0;
      for (int t = 1; t <= ens.horizon; ++t) {
        if (t + ens.value(i, t) <= s)
          ++cnt;
        else
          break;
      }
      x[static_cast<std::size_t>(s)] = cnt;
    }
  }
  out.assert_invariants();
  return out;
}

// Inverse shear: P_i(t) = min{s : X_i(s) = t} - t for t >= i. For t < i
// the value is pinned at 1 - i: the nonintersection chain
// P_i(t) <= P_{i-1}(t-1) - 1 <= ... <= P_{i-t}(0) - t forces it.
inline WalkEnsemble unshear_to_geometric(const WalkEnsemble& ens, int geometric_horizon) {
  require(ens.model == WalkModel::BernoulliNI, "unshear expects a Bernoulli ensemble");
  WalkEnsemble out;
  out.n = ens.n;
  out.model = WalkModel::GeometricNI;
  out.beta = ens.beta;
  out.horizon = geometric_horizon;
  out.seed = ens.seed;
  out.trajectories.assign(static_cast<std::size_t>(ens.n), {});
  for (int i = 1; i <= ens.n; ++i) {
    auto& p = out.trajectories[static_cast<std::size_t>(i - 1)];
    p.assign(static_cast<std::size_t>(geometric_horizon) + 1, 0.0);
    for (int t = 0; t <= geometric_horizon; ++t) {
      if (t < i) {
        p[static_cast<std::size_t>(t)] = 1.0 - i;
        continue;
      }
      int first = -1;
      for (int s = 0; s <= ens.horizon; ++s)
        if (ens.value(i, s) == t) {
          first = s;
          break;
        }
      require(first >= 0, "Bernoulli horizon too short to invert the shear");
      p[static_cast<std::size_t>(t)] = first - t;
    }
  }
  out.assert_invariants();
  return out;
}

// Seppalainen-Johansson passage values: k strictly ordered paths with
// exactly one cell per column, nondecreasing heights. Computed by dual
// row insertion over columns (letters bumped at >=, columns consumed in
// reverse order); conjugate shape partial sums give L_{n,k}(m).
namespace detail {
class DualInsertion {
 public:
  explicit DualInsertion(int n) : n_(n) {}

  // inserts the strictly increasing word of rows holding a 1
  void insert_word(const std::vector<int>& word) {
    cur_ = word;
    for (std::size_t r = 0; !cur_.empty(); ++r) {
      if (rows_.size() <= r) rows_.emplace_back();
      bump(rows_[r]);
    }
  }

  // conjugate-shape partial sum: number of rows with length >= j summed
  std::int64_t conjugate_partial(int k) const {
    std::int64_t s = 0;
    for (const auto& row : rows_) s += std::min<std::int64_t>(k, static_cast<std::int64_t>(row.size()));
    return s;
  }

 private:
  void bump(std::vector<int>& row) {
    next_.clear();
    for (int letter : cur_) {
      auto it = std::lower_bound(row.begin(), row.end(), letter);
      if (it == row.end()) {
        row.push_back(letter);
      } else {
        next_.push_back(*it);
        *it = letter;
      }
    }
    cur_ = next_;
  }

  int n_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> cur_, next_;
};
}  // namespace detail

inline std::vector<std::vector<std::int64_t>> sj_passage_values(const WeightGrid& grid,
                                                                int k_max) {
  require(k_max >= 1 && k_max <= grid.n_rows, "k_max must be in [1, n_rows]");
  for (double w : grid.weights)
    require(w == 0.0 || w == 1.0, "SJ grid entries must be 0/1");
  std::vector<std::vector<std::int64_t>> L(
      static_cast<std::size_t>(k_max),
      std::vector<std::int64_t>(static_cast<std::size_t>(grid.n_cols) + 1, 0));
  // one insertion pass per prefix length; columns enter in reverse order
  for (int m = 1; m <= grid.n_cols; ++m) {
    detail::DualInsertion ins(grid.n_rows);
    std::vector<int> word;
    for (int a = m; a >= 1; --a) {
      word.clear();
      for (int b = 1; b <= grid.n_rows; ++b)
        if (grid(a, b) == 1.0) word.push_back(b);
      ins.insert_word(word);
    }
    for (int k = 1; k <= k_max; ++k)
      L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)] = ins.conjugate_partial(k);
  }
  return L;
}

// Brute-force SJ oracle: enumerate the per-column strictly ordered height
// tuples with per-path nondecreasing heights.
inline std::int64_t sj_bruteforce(const WeightGrid& grid, int k, int m) {
  require(grid.n_rows <= 6 && m <= 6, "brute force limited to n, m <= 6");
  const int n = grid.n_rows;
  require(k >= 1 && k <= n && m >= 1 && m <= grid.n_cols, "bad k, m");
  std::vector<std::vector<int>> tuples;  // strictly increasing k-tuples in 1..n
  std::vector<int> cur(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == k) {
      tuples.push_back(cur);
      return;
    }
    for (int h = lo; h <= n; ++h) {
      cur[static_cast<std::size_t>(pos)] = h;
      self(self, pos + 1, h + 1);
    }
  };
  rec(rec, 0, 1);
  std::vector<std::int64_t> best(tuples.size(), std::numeric_limits<std::int64_t>::min());
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    std::int64_t w = 0;
    for (int p = 0; p < k; ++p) w += static_cast<std::int64_t>(grid(1, tuples[ti][static_cast<std::size_t>(p)]));
    best[ti] = w;
  }
  for (int a = 2; a <= m; ++a) {
    std::vector<std::int64_t> nxt(tuples.size(), std::numeric_limits<std::int64_t>::min());
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      if (best[ti] == std::numeric_limits<std::int64_t>::min()) continue;
      for (std::size_t tj = 0; tj < tuples.size(); ++tj) {
        bool ok = true;
        for (int p = 0; p < k && ok; ++p)
          if (tuples[tj][static_cast<std::size_t>(p)] < tuples[ti][static_cast<std::size_t>(p)]) ok = false;
        if (!ok) continue;
        std::int64_t w = best[ti];
        for (int p = 0; p < k; ++p)
          w += static_cast<std::int64_t>(grid(a, tuples[tj][static_cast<std::size_t>(p)]));
        nxt[tj] = std::max(nxt[tj], w);
      }
    }
    best = std::move(nxt);
  }
  std::int64_t ans = 0;
  for (std::int64_t b : best) ans = std::max(ans, b);
  return ans;
}

// SJ walk ensemble: trajectories L_k - L_{k-1} + n - k are strictly
// ordered Bernoulli walks (walk index k from the top).
inline WalkEnsemble sj_walks(const WeightGrid& grid, int k_max) {
  auto L = sj_passage_values(grid, k_max);
  WalkEnsemble e;
  e.n = k_max;
  e.model = WalkModel::SJWalks;
  e.beta = grid.env.beta;
  e.horizon = grid.n_cols;
  e.seed = grid.seed;
  e.trajectories.assign(static_cast<std::size_t>(k_max), {});
  for (int k = 1; k <= k_max; ++k) {
    auto& tr = e.trajectories[static_cast<std::size_t>(k - 1)];
    tr.resize(static_cast<std::size_t>(grid.n_cols) + 1);
    for (int m = 0; m <= grid.n_cols; ++m) {
      std::int64_t lk = L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)];
      std::int64_t lk1 = k >= 2 ? L[static_cast<std::size_t>(k - 2)][static_cast<std::size_t>(m)] : 0;
      tr[static_cast<std::size_t>(m)] = static_cast<double>(lk - lk1 + grid.n_rows - k);
    }
  }
  return e;
}

}  // namespace airylab
