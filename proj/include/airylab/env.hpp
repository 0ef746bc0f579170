#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/rng.hpp"

namespace airylab {

enum class EnvTag {
  Geometric,      // integer weights, odds beta, mean 1/beta
  Exponential,    // mean-1 exponential weights
  BernoulliSJ,    // {0,1} weights, odds beta
  PoissonLines,   // rate-1 Poisson jump processes per line
  PoissonPlane,   // intensity-1 planar Poisson field
  BrownianLines,  // variance-1 Brownian paths per line
};

struct EnvKind {
  EnvTag tag = EnvTag::Geometric;
  double beta = 1.0;  // odds; meaningful for Geometric and BernoulliSJ

  static EnvKind geometric(double beta) {
    require(beta > 0, "geometric odds must be positive");
    return {EnvTag::Geometric, beta};
  }
  static EnvKind exponential() { return {EnvTag::Exponential, 0.0}; }
  static EnvKind bernoulli_sj(double beta) {
    require(beta > 0, "Bernoulli odds must be positive");
    return {EnvTag::BernoulliSJ, beta};
  }
  static EnvKind poisson_lines() { return {EnvTag::PoissonLines, 0.0}; }
  static EnvKind poisson_plane() { return {EnvTag::PoissonPlane, 0.0}; }
  static EnvKind brownian_lines() { return {EnvTag::BrownianLines, 0.0}; }

  bool discrete() const {
    return tag == EnvTag::Geometric || tag == EnvTag::Exponential || tag == EnvTag::BernoulliSJ;
  }
  std::string name() const {
    switch (tag) {
      case EnvTag::Geometric: return "geometric";
      case EnvTag::Exponential: return "exponential";
      case EnvTag::BernoulliSJ: return "bernoulli_sj";
      case EnvTag::PoissonLines: return "poisson_lines";
      case EnvTag::PoissonPlane: return "poisson_plane";
      case EnvTag::BrownianLines: return "brownian_lines";
    }
    return "?";
  }
};

// Rectangular weight array, row-major with the bottom-left cell first:
// weight(col, row) indexes column a (time direction) and row b, both
// 1-based, matching the (1,1) bottom-left corner convention.
struct WeightGrid {
  int n_cols = 0;
  int n_rows = 0;
  std::vector<double> weights;  // row-major: w[(row-1)*n_cols + (col-1)]
  EnvKind env;
  std::uint64_t seed = 0;

  double operator()(int col, int row) const {
    return weights[static_cast<std::size_t>(row - 1) * n_cols + (col - 1)];
  }
  double& at(int col, int row) {
    return weights[static_cast<std::size_t>(row - 1) * n_cols + (col - 1)];
  }
  double total() const {
    double s = 0;
    for (double w : weights) s += w;
    return s;
  }
};

inline WeightGrid sample_weight_grid(EnvKind env, int n_rows, int n_cols, std::uint64_t seed,
                                     std::uint64_t replica = 0) {
  require(n_rows >= 1 && n_cols >= 1, "grid dimensions must be positive");
  require(env.discrete(), "sample_weight_grid needs a discrete environment");
  WeightGrid g;
  g.n_cols = n_cols;
  g.n_rows = n_rows;
  g.env = env;
  g.seed = seed;
  g.weights.resize(static_cast<std::size_t>(n_rows) * n_cols);
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    RngStream s = entry_stream(seed, replica, i);
    switch (env.tag) {
      case EnvTag::Geometric:
        g.weights[i] = static_cast<double>(s.next_geometric(env.beta));
        break;
      case EnvTag::Exponential:
        g.weights[i] = s.next_exponential();
        break;
      case EnvTag::BernoulliSJ:
        g.weights[i] = s.next_bernoulli(env.beta) ? 1.0 : 0.0;
        break;
      default: break;
    }
  }
  return g;
}

// Entrywise monotone coupling on shared uniforms: E = -log U and
// G = floor(E / log(1+beta)). Marginals are exact and every entry obeys
// |beta G - E| <= beta (1 + E) and E <= beta (G + 1).
inline std::pair<WeightGrid, WeightGrid> sample_coupled_grids(double beta, int n_rows, int n_cols,
                                                              std::uint64_t seed,
                                                              std::uint64_t replica = 0) {
  require(beta > 0, "beta must be positive");
  require(n_rows >= 1 && n_cols >= 1, "grid dimensions must be positive");
  WeightGrid geo, expo;
  geo.n_cols = expo.n_cols = n_cols;
  geo.n_rows = expo.n_rows = n_rows;
  geo.env = EnvKind::geometric(beta);
  expo.env = EnvKind::exponential();
  geo.seed = expo.seed = seed;
  std::size_t total = static_cast<std::size_t>(n_rows) * n_cols;
  geo.weights.resize(total);
  expo.weights.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    RngStream s = entry_stream(seed, replica, i);
    auto ge = s.next_coupled_geom_exp(beta);
    geo.weights[i] = static_cast<double>(ge.g);
    expo.weights[i] = ge.e;
  }
  return {std::move(geo), std::move(expo)};
}

struct Window {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

// Planar points (x, y), or (time, line index) for the line environment.
struct PointField {
  std::vector<std::pair<double, double>> points;
  Window window;
  EnvKind env;
  std::uint64_t seed = 0;
};

// Poisson field on a window. PoissonPlane: intensity-1 points in the
// rectangle. PoissonLines: lines y0..y1-1 (integer indices), rate-1 jump
// times on [x0, x1] per line. Coordinates colliding in either axis are
// resampled; distinct coordinates are required downstream.
inline PointField sample_point_field(EnvKind env, Window window, std::uint64_t seed,
                                     std::uint64_t replica = 0) {
  require(env.tag == EnvTag::PoissonPlane || env.tag == EnvTag::PoissonLines,
          "point fields exist for the Poisson environments");
  PointField f;
  f.window = window;
  f.env = env;
  f.seed = seed;
  RngStream master = RngStream(seed).substream(replica);
  if (env.tag == EnvTag::PoissonPlane) {
    require(window.area() >= 0, "window must be nonempty");
    if (window.area() == 0) return f;
    RngStream counts = master.substream(0);
    std::int64_t n = counts.next_poisson(window.area());
    std::set<double> xs, ys;
    for (std::int64_t i = 0; i < n; ++i) {
      RngStream s = master.substream(1).substream(static_cast<std::uint64_t>(i));
      for (;;) {
        double x = window.x0 + (window.x1 - window.x0) * s.next_uniform();
        double y = window.y0 + (window.y1 - window.y0) * s.next_uniform();
        if (xs.insert(x).second && ys.insert(y).second) {
          f.points.emplace_back(x, y);
          break;
        }
      }
    }
  } else {
    int lines = static_cast<int>(window.y1 - window.y0);
    require(lines >= 1 && window.x1 > window.x0, "line window must be nonempty");
    for (int line = 0; line < lines; ++line) {
      RngStream s = master.substream(static_cast<std::uint64_t>(line) + 7);
      std::int64_t n = s.next_poisson(window.x1 - window.x0);
      std::set<double> ts;
      for (std::int64_t i = 0; i < n; ++i) {
        for (;;) {
          double t = window.x0 + (window.x1 - window.x0) * s.next_uniform();
          if (ts.insert(t).second) {
            f.points.emplace_back(t, static_cast<double>(line + 1));
            break;
          }
        }
      }
    }
  }
  return f;
}

// Paths of n lines tabulated on a uniform mesh; Poisson paths carry
// counting increments, Brownian paths N(0, dt) increments.
struct LineField {
  int n_lines = 0;
  double dt = 0;
  double horizon = 0;
  std::vector<std::vector<double>> increments;  // [line][mesh cell]
  EnvKind env;
  std::uint64_t seed = 0;

  int n_cells() const {
    return increments.empty() ? 0 : static_cast<int>(increments.front().size());
  }
};

inline LineField sample_line_field(EnvKind env, int n_lines, double horizon, double dt,
                                   std::uint64_t seed, std::uint64_t replica = 0) {
  require(env.tag == EnvTag::PoissonLines || env.tag == EnvTag::BrownianLines,
          "line fields exist for the Poisson/Brownian environments");
  require(n_lines >= 1 && horizon > 0 && dt > 0, "line field needs positive sizes");
  LineField f;
  f.n_lines = n_lines;
  f.dt = dt;
  f.horizon = horizon;
  f.env = env;
  f.seed = seed;
  int cells = static_cast<int>(std::ceil(horizon / dt - 1e-12));
  f.increments.assign(static_cast<std::size_t>(n_lines), std::vector<double>(cells));
  for (int line = 0; line < n_lines; ++line) {
    for (int c = 0; c < cells; ++c) {
      RngStream s = entry_stream(seed, replica,
                                 static_cast<std::uint64_t>(line) * 1000003u + c);
      f.increments[static_cast<std::size_t>(line)][static_cast<std::size_t>(c)] =
          env.tag == EnvTag::PoissonLines
              ? static_cast<double>(s.next_poisson(dt))
              : std::sqrt(dt) * s.next_normal();
    }
  }
  return f;
}

// Mesh version of an exact Poisson point field (used to cross-check the
// event-time passage construction against the mesh pipeline).
inline LineField line_field_from_points(const PointField& field, int n_lines, double horizon,
                                        double dt) {
  require(field.env.tag == EnvTag::PoissonLines, "expected a Poisson line field");
  LineField f;
  f.n_lines = n_lines;
  f.dt = dt;
  f.horizon = horizon;
  f.env = field.env;
  f.seed = field.seed;
  int cells = static_cast<int>(std::ceil(horizon / dt - 1e-12));
  f.increments.assign(static_cast<std::size_t>(n_lines), std::vector<double>(cells, 0.0));
  for (const auto& [t, line] : field.points) {
    int c = static_cast<int>(t / dt);
    if (c >= cells) c = cells - 1;
    int li = static_cast<int>(line) - 1;
    if (li >= 0 && li < n_lines && t <= horizon)
      f.increments[static_cast<std::size_t>(li)][static_cast<std::size_t>(c)] += 1.0;
  }
  return f;
}

// Coarsen a Brownian mesh by merging pairs of cells; the coarse field is
// a consistent restriction of the same path, so passage values compare
// monotonely across refinements.
inline LineField coarsen_line_field(const LineField& f) {
  LineField out = f;
  out.dt = 2 * f.dt;
  int cells = f.n_cells() / 2;
  out.increments.assign(static_cast<std::size_t>(f.n_lines), std::vector<double>(cells));
  for (int line = 0; line < f.n_lines; ++line)
    for (int c = 0; c < cells; ++c)
      out.increments[static_cast<std::size_t>(line)][static_cast<std::size_t>(c)] =
          f.increments[static_cast<std::size_t>(line)][2 * static_cast<std::size_t>(c)] +
          f.increments[static_cast<std::size_t>(line)][2 * static_cast<std::size_t>(c) + 1];
  return out;
}

}  // namespace airylab
