#pragma once

#include <cmath>
#include <vector>

#include "airylab/common.hpp"

namespace airylab {

struct QuadRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n, seeded with the
// Chebyshev-like estimate. Accurate to machine precision for n <= a few
// hundred, which is all we use.
inline const QuadRule& gauss_legendre(int n) {
  static thread_local std::vector<QuadRule> cache(257);
  require(n >= 1 && n <= 256, "Gauss-Legendre order out of range");
  QuadRule& rule = cache[static_cast<std::size_t>(n)];
  if (!rule.nodes.empty()) return rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Composite panel rule on [a, b] given panel edges.
struct PanelQuad {
  std::vector<double> t;
  std::vector<double> w;
};

inline PanelQuad panel_quadrature(const std::vector<double>& edges, int deg) {
  const QuadRule& g = gauss_legendre(deg);
  PanelQuad q;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      q.t.push_back(mid + half * g.nodes[i]);
      q.w.push_back(half * g.weights[i]);
    }
  }
  return q;
}

// Panel edges that resolve scale `fine` near 0 and grow geometrically to
// `len`. Used along contours whose integrand concentrates at the start.
inline std::vector<double> geometric_edges(double len, double fine, double ratio = 1.8) {
  std::vector<double> edges{0.0};
  double x = std::min(fine, len);
  while (x < len) {
    edges.push_back(x);
    x *= ratio;
  }
  edges.push_back(len);
  return edges;
}

// LU determinant with partial pivoting; used for small Fredholm matrices.
inline double lu_determinant(std::vector<double>& a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * n + c]) >
          std::abs(a[static_cast<std::size_t>(piv) * n + c]))
        piv = r;
    if (piv != c) {
      for (int k = 0; k < n; ++k)
        std::swap(a[static_cast<std::size_t>(piv) * n + k], a[static_cast<std::size_t>(c) * n + k]);
      det = -det;
    }
    double d = a[static_cast<std::size_t>(c) * n + c];
    det *= d;
    if (d == 0.0) return 0.0;
    for (int r = c + 1; r < n; ++r) {
      double f = a[static_cast<std::size_t>(r) * n + c] / d;
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k)
        a[static_cast<std::size_t>(r) * n + k] -= f * a[static_cast<std::size_t>(c) * n + k];
    }
  }
  return det;
}

}  // namespace airylab
