#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/env.hpp"

namespace airylab {

// Multi-path passage values L_{n,k}(m) for k = 0..k_max on a contiguous
// m range (or a real time mesh for continuous environments). L_{n,0} = 0
// and values for k beyond min(m, n) repeat the full grid sum.
struct PassageProfile {
  int n = 0;
  int k_max = 0;
  std::vector<double> m_values;            // column counts or mesh times
  std::vector<std::vector<double>> L;      // L[k-1][mi] for k = 1..k_max
  bool nonnegative_weights = true;

  double value(int k, std::size_t mi) const {
    if (k <= 0) return 0.0;
    if (k > k_max) k = k_max;
    return L[static_cast<std::size_t>(k - 1)][mi];
  }
  double increment(int k, std::size_t mi) const { return value(k, mi) - value(k - 1, mi); }

  // Increment monotonicity in k, monotonicity in m and nonnegative
  // increments; all three require nonnegative weights (an all-negative
  // grid breaks each of them), so they are checked only then.
  void assert_invariants() const {
    if (!nonnegative_weights) return;
    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
      double prev_inc = std::numeric_limits<double>::infinity();
      for (int k = 1; k <= k_max; ++k) {
        double inc = increment(k, mi);
        if (inc > prev_inc + 1e-9)
          throw invariant_error("passage increments must be nonincreasing in k");
        prev_inc = inc;
        if (inc < -1e-9) throw invariant_error("passage increments must be nonnegative");
        if (mi > 0 && value(k, mi) < value(k, mi - 1) - 1e-9)
          throw invariant_error("passage values must be nondecreasing in m");
      }
    }
  }
};

// Tropical RSK row insertion. A tableau row stores the real multiplicity
// of each letter 1..n; inserting a column word (letter b with
// multiplicity w_b, in increasing b) bumps the smallest letters > b into
// the next row. Row lengths are the shape lambda_1 >= lambda_2 >= ...,
// and lambda_1 + ... + lambda_k equals the k-path passage value.
// Multiplicities must be nonnegative; negative weights are handled by
// the fixed per-path-length shift in passage_profile_rsk.
class TropicalInsertion {
 public:
  TropicalInsertion(int n_letters, int max_rows)
      : n_(n_letters), max_rows_(std::min(max_rows, n_letters)) {}

  void insert_column(const double* w) {
    word_.clear();
    for (int b = 1; b <= n_; ++b)
      if (w[b - 1] > 0) word_.push_back({b, w[b - 1]});
    for (std::size_t r = 0; !word_.empty(); ++r) {
      if (r >= static_cast<std::size_t>(max_rows_)) break;
      if (rows_.size() <= r) rows_.emplace_back(static_cast<std::size_t>(n_) + 1, 0.0);
      bump_into_row(rows_[r]);
    }
  }

  double shape(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > rows_.size()) return 0.0;
    double len = 0;
    for (double m : rows_[static_cast<std::size_t>(k - 1)]) len += m;
    return len;
  }

  int rows() const { return static_cast<int>(rows_.size()); }

 private:
  struct Group {
    int letter;
    double mult;
  };

  void bump_into_row(std::vector<double>& row) {
    bumped_.clear();
    // groups arrive in strictly increasing letters, and each group
    // consumes the smallest letters above its own, so the scan position
    // only moves forward: amortized O(n) per row
    int scan = 1;
    for (const Group& g : word_) {
      double remaining = g.mult;
      scan = std::max(scan, g.letter + 1);
      for (int l = scan; l <= n_ && remaining > 0; ++l) {
        scan = l;
        double take = std::min(remaining, row[static_cast<std::size_t>(l)]);
        if (take > 0) {
          row[static_cast<std::size_t>(l)] -= take;
          remaining -= take;
          bumped_.push_back({l, take});
        }
      }
      row[static_cast<std::size_t>(g.letter)] += g.mult;
    }
    word_.clear();
    for (const Group& g : bumped_) {
      if (!word_.empty() && word_.back().letter == g.letter)
        word_.back().mult += g.mult;
      else
        word_.push_back(g);
    }
  }

  int n_;
  int max_rows_;
  std::vector<std::vector<double>> rows_;  // rows_[r][letter] multiplicity
  std::vector<Group> word_, bumped_;
};

// Exact k-path passage values by tropical row insertion, O(m n k_max).
// m_range lists the column counts at which the profile is recorded; they
// must be nondecreasing and at most n_cols.
inline PassageProfile passage_profile_rsk(const WeightGrid& grid, int k_max,
                                          const std::vector<int>& m_range) {
  require(grid.n_cols >= 1 && grid.n_rows >= 1, "grid must be nonempty");
  require(k_max >= 1 && k_max <= grid.n_rows, "k_max must be in [1, n_rows]");
  const int n = grid.n_rows;
  double wmin = 0;
  for (double w : grid.weights) wmin = std::min(wmin, w);
  const double shift = -wmin;  // makes multiplicities nonnegative

  PassageProfile prof;
  prof.n = n;
  prof.k_max = k_max;
  prof.nonnegative_weights = wmin >= 0;

  TropicalInsertion ins(n, k_max);
  std::vector<double> col(static_cast<std::size_t>(n));
  std::size_t next = 0;
  std::vector<int> ms = m_range;
  prof.L.assign(static_cast<std::size_t>(k_max), {});
  auto record = [&](int m) {
    prof.m_values.push_back(m);
    for (int k = 1; k <= k_max; ++k) {
      int keff = std::min({k, m, n});
      double s = 0;
      for (int j = 1; j <= keff; ++j) s += ins.shape(j);
      // undo the shift: every k-tuple of minimal disjoint paths covers
      // exactly k (m + n - k) cells
      if (shift > 0 && keff > 0)
        s -= shift * static_cast<double>(keff) * (m + n - keff);
      prof.L[static_cast<std::size_t>(k - 1)].push_back(s);
    }
  };
  for (std::size_t i = 0; i < ms.size(); ++i)
    require(ms[i] >= 0 && ms[i] <= grid.n_cols && (i == 0 || ms[i] >= ms[i - 1]),
            "m_range must be nondecreasing within the grid");
  for (int a = 0; a <= grid.n_cols; ++a) {
    if (a > 0) {
      for (int b = 1; b <= n; ++b)
        col[static_cast<std::size_t>(b - 1)] = grid(a, b) + shift;
      ins.insert_column(col.data());
    }
    while (next < ms.size() && ms[next] == a) {
      record(a);
      ++next;
    }
    if (next == ms.size()) break;
  }
  prof.assert_invariants();
  return prof;
}

inline std::vector<int> full_m_range(int n_cols) {
  std::vector<int> r(static_cast<std::size_t>(n_cols) + 1);
  for (int i = 0; i <= n_cols; ++i) r[static_cast<std::size_t>(i)] = i;
  return r;
}

// Exhaustive enumeration oracle for small grids: all k-tuples of
// disjoint minimal up-right paths from (1,i) to (m, n-k+i).
namespace detail {
inline void enumerate_paths(int m, int n, int start_row, int end_row, int col, int row,
                            std::uint64_t cells, std::vector<std::uint64_t>& out) {
  cells |= 1ull << ((row - 1) * m + (col - 1));
  if (col == m && row == end_row) {
    out.push_back(cells);
    return;
  }
  if (col < m) enumerate_paths(m, n, start_row, end_row, col + 1, row, cells, out);
  if (row < end_row) enumerate_paths(m, n, start_row, end_row, col, row + 1, cells, out);
}

inline double mask_weight(const WeightGrid& g, int m, std::uint64_t mask) {
  double s = 0;
  for (int row = 1; row <= g.n_rows; ++row)
    for (int col = 1; col <= m; ++col)
      if (mask & (1ull << ((row - 1) * m + (col - 1)))) s += g(col, row);
  return s;
}
}  // namespace detail

inline double passage_profile_bruteforce(const WeightGrid& grid, int k, int m) {
  require(grid.n_rows <= 6 && m <= 6, "brute force limited to n, m <= 6");
  require(m >= 1 && m <= grid.n_cols, "m out of range");
  require(k >= 1, "k must be positive");
  const int n = grid.n_rows;
  if (k > std::min(m, n)) k = std::min(m, n);
  std::vector<std::vector<std::uint64_t>> paths(static_cast<std::size_t>(k));
  for (int p = 1; p <= k; ++p)
    detail::enumerate_paths(m, n, p, n - k + p, 1, p, 0, paths[static_cast<std::size_t>(p - 1)]);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::uint64_t acc = 0;
    bool ok = true;
    for (int p = 0; p < k && ok; ++p) {
      std::uint64_t cells = paths[static_cast<std::size_t>(p)][idx[static_cast<std::size_t>(p)]];
      if (acc & cells) ok = false;
      acc |= cells;
    }
    if (ok) best = std::max(best, detail::mask_weight(grid, m, acc));
    int p = k - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] ==
                         paths[static_cast<std::size_t>(p)].size()) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return best;
}

// Continuous-time passage values on the mesh of a line field. Restricting
// jump times to mesh points turns the path weight into the discrete
// passage value of the increment grid (columns = mesh cells), including
// the shared boundary cell at each jump.
inline PassageProfile passage_profile_continuous(const LineField& lines, int k_max,
                                                 const std::vector<double>& t_mesh) {
  require(lines.n_lines >= 1 && lines.n_cells() >= 1, "line field must be nonempty");
  require(k_max >= 1 && k_max <= lines.n_lines, "k_max must be in [1, n_lines]");
  WeightGrid g;
  g.n_cols = lines.n_cells();
  g.n_rows = lines.n_lines;
  g.env = lines.env;
  g.seed = lines.seed;
  g.weights.resize(static_cast<std::size_t>(g.n_cols) * g.n_rows);
  for (int b = 1; b <= g.n_rows; ++b)
    for (int a = 1; a <= g.n_cols; ++a)
      g.at(a, b) = lines.increments[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)];
  std::vector<int> ms;
  for (double t : t_mesh) {
    require(t >= 0 && t <= lines.horizon + 1e-9, "mesh time outside horizon");
    int cols = std::min(g.n_cols, static_cast<int>(std::floor(t / lines.dt + 1e-9)));
    ms.push_back(cols);
  }
  PassageProfile prof = passage_profile_rsk(g, k_max, ms);
  prof.m_values.assign(t_mesh.begin(), t_mesh.end());
  return prof;
}

// Exact Poisson-lines passage values from event locations: consecutive
// event times split [0, t] into columns holding at most one point each,
// which reduces the supremum to the discrete insertion.
inline PassageProfile passage_profile_poisson_exact(const PointField& field, int n_lines,
                                                    int k_max, const std::vector<double>& t_mesh) {
  require(field.env.tag == EnvTag::PoissonLines, "expected Poisson line events");
  require(k_max >= 1 && k_max <= n_lines, "k_max must be in [1, n_lines]");
  std::vector<std::pair<double, int>> events;
  for (const auto& [t, line] : field.points)
    events.emplace_back(t, static_cast<int>(line));
  std::sort(events.begin(), events.end());

  PassageProfile prof;
  prof.n = n_lines;
  prof.k_max = k_max;
  TropicalInsertion ins(n_lines, k_max);
  std::vector<double> col(static_cast<std::size_t>(n_lines), 0.0);
  std::size_t ei = 0;
  int inserted = 0;
  std::vector<double> sorted_t = t_mesh;
  require(std::is_sorted(sorted_t.begin(), sorted_t.end()), "t_mesh must be sorted");
  for (double t : sorted_t) {
    while (ei < events.size() && events[ei].first <= t) {
      std::fill(col.begin(), col.end(), 0.0);
      col[static_cast<std::size_t>(events[ei].second - 1)] = 1.0;
      ins.insert_column(col.data());
      ++inserted;
      ++ei;
    }
    prof.m_values.push_back(t);
    for (int k = 1; k <= k_max; ++k) {
      if (prof.L.size() < static_cast<std::size_t>(k)) prof.L.emplace_back();
      int keff = std::min({k, inserted, n_lines});
      double s = 0;
      for (int j = 1; j <= keff; ++j) s += ins.shape(j);
      prof.L[static_cast<std::size_t>(k - 1)].push_back(s);
    }
  }
  prof.assert_invariants();
  return prof;
}

// Planar Poisson passage values L_k(t) to targets (t, 1): boxes of a grid
// mesh are refined until no row or column holds two points, after which
// the discrete passage value is mesh-independent. Beyond `dense_limit`
// cells per side the separated mesh is compressed to the point-rank
// permutation grid; dropping empty rows and columns preserves every
// passage value.
inline PassageProfile passage_planar(const PointField& field, int k_max,
                                     const std::vector<double>& s_points,
                                     int extra_refinements = 0, int dense_limit = 512) {
  require(field.env.tag == EnvTag::PoissonPlane, "expected a planar Poisson field");
  PassageProfile prof;
  prof.k_max = k_max;
  for (double t : s_points) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : field.points)
      if (x >= 0 && x <= t && y >= 0 && y <= 1) pts.emplace_back(x, y);
    // cell width below the smallest coordinate gap separates every row
    // and column; coordinates are distinct by construction
    double gap_x = t, gap_y = 1.0;
    if (pts.size() > 1) {
      std::vector<double> xs, ys;
      for (const auto& [x, y] : pts) {
        xs.push_back(x);
        ys.push_back(y);
      }
      std::sort(xs.begin(), xs.end());
      std::sort(ys.begin(), ys.end());
      for (std::size_t i = 1; i < xs.size(); ++i) {
        gap_x = std::min(gap_x, xs[i] - xs[i - 1]);
        gap_y = std::min(gap_y, ys[i] - ys[i - 1]);
      }
      require(gap_x > 0 && gap_y > 0, "mesh refinement failed to separate points");
    }
    std::int64_t cells = 2;
    while (!pts.empty() &&
           (t / static_cast<double>(cells) >= gap_x ||
            1.0 / static_cast<double>(cells) >= gap_y)) {
      cells *= 2;
      require(cells <= (1ll << 40), "mesh refinement failed to separate points");
    }
    for (int r = 0; r < extra_refinements; ++r) cells *= 2;
    prof.n = static_cast<int>(std::min<std::int64_t>(cells, std::numeric_limits<int>::max()));
    prof.m_values.push_back(t);
    if (pts.empty()) {
      for (int k = 1; k <= k_max; ++k) {
        if (prof.L.size() < static_cast<std::size_t>(k)) prof.L.emplace_back();
        prof.L[static_cast<std::size_t>(k - 1)].push_back(0.0);
      }
      continue;
    }
    WeightGrid g;
    g.env = field.env;
    g.seed = field.seed;
    int side;
    if (cells <= dense_limit) {
      side = static_cast<int>(cells);
      g.n_cols = g.n_rows = side;
      g.weights.assign(static_cast<std::size_t>(side) * side, 0.0);
      for (const auto& [x, y] : pts) {
        int cx = std::min(side - 1, static_cast<int>(x / t * side));
        int cy = std::min(side - 1, static_cast<int>(y * side));
        g.at(cx + 1, cy + 1) += 1.0;
      }
    } else {
      side = static_cast<int>(pts.size());
      std::sort(pts.begin(), pts.end());
      std::vector<std::pair<double, int>> by_y;
      for (int i = 0; i < side; ++i) by_y.emplace_back(pts[static_cast<std::size_t>(i)].second, i);
      std::sort(by_y.begin(), by_y.end());
      g.n_cols = g.n_rows = side;
      g.weights.assign(static_cast<std::size_t>(side) * side, 0.0);
      for (int rank = 0; rank < side; ++rank)
        g.at(by_y[static_cast<std::size_t>(rank)].second + 1, rank + 1) = 1.0;
    }
    PassageProfile sub = passage_profile_rsk(g, std::min(k_max, side), {side});
    for (int k = 1; k <= k_max; ++k) {
      if (prof.L.size() < static_cast<std::size_t>(k)) prof.L.emplace_back();
      prof.L[static_cast<std::size_t>(k - 1)].push_back(sub.value(k, 0));
    }
  }
  return prof;
}

}  // namespace airylab
