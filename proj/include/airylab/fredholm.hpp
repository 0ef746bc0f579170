#pragma once

#include <cmath>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/kernels.hpp"
#include "airylab/quadrature.hpp"

namespace airylab {

struct FredholmConfig {
  int order = 48;           // Nystrom quadrature order
  double truncation = 16.0; // integrate the kernel on (s, s + truncation)

  void validate() const {
    if (order < 8) throw config_error("Fredholm order must be at least 8");
    if (truncation < 10.0) throw config_error("Fredholm truncation must be at least 10");
  }
};

// Tracy-Widom GUE distribution F2(s) = det(I - K_Airy)|_{(s, infty)} by
// Nystrom discretization with Gauss-Legendre nodes on the truncated
// half-line; the symmetrized matrix is I - sqrt(w_i w_j) K(x_i, x_j).
inline double tracy_widom_cdf(double s, FredholmConfig cfg = {}) {
  require(s >= -10.0 && s <= 6.0, "Tracy-Widom CDF supported on [-10, 6]");
  cfg.validate();
  const QuadRule& g = gauss_legendre(cfg.order);
  int p = cfg.order;
  std::vector<double> xs(static_cast<std::size_t>(p)), ws(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    xs[static_cast<std::size_t>(i)] = s + 0.5 * cfg.truncation * (g.nodes[static_cast<std::size_t>(i)] + 1.0);
    ws[static_cast<std::size_t>(i)] = 0.5 * cfg.truncation * g.weights[static_cast<std::size_t>(i)];
  }
  QuadConfig kernel_quad;
  kernel_quad.check_refinement = false;
  std::vector<double> K = airy_kernel_matrix(xs, kernel_quad);
  std::vector<double> M(static_cast<std::size_t>(p) * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      M[static_cast<std::size_t>(i) * p + j] =
          (i == j ? 1.0 : 0.0) - std::sqrt(ws[static_cast<std::size_t>(i)] * ws[static_cast<std::size_t>(j)]) *
                                     K[static_cast<std::size_t>(i) * p + j];
  double det = lu_determinant(M, p);
  return det;
}

// Stability gate: evaluates at the configured order and at double the
// order; throws when they disagree beyond 1e-6.
inline double tracy_widom_cdf_checked(double s, FredholmConfig cfg = {}) {
  double v1 = tracy_widom_cdf(s, cfg);
  FredholmConfig big = cfg;
  big.order = std::min(200, cfg.order * 2);
  double v2 = tracy_widom_cdf(s, big);
  if (std::abs(v1 - v2) > 1e-6)
    throw numeric_error("Tracy-Widom determinant unstable under order doubling",
                        std::abs(v1 - v2));
  return v2;
}

struct TwTable {
  std::vector<double> s;
  std::vector<double> F2;

  // monotone piecewise-linear interpolation with clamped tails
  double operator()(double x) const {
    if (x <= s.front()) return 0.0;
    if (x >= s.back()) return 1.0;
    auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t i = static_cast<std::size_t>(it - s.begin());
    double w = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return F2[i - 1] + w * (F2[i] - F2[i - 1]);
  }
};

inline TwTable tracy_widom_table(double s0, double s1, double step, FredholmConfig cfg = {}) {
  TwTable t;
  for (double s = s0; s <= s1 + 1e-12; s += step) {
    t.s.push_back(s);
    t.F2.push_back(std::min(1.0, std::max(0.0, tracy_widom_cdf(s, cfg))));
  }
  for (std::size_t i = 1; i < t.F2.size(); ++i)
    if (t.F2[i] + 1e-9 < t.F2[i - 1]) throw invariant_error("Tracy-Widom CDF not monotone");
  return t;
}

// Mean and variance of the induced density via tail integrals of the
// tabulated CDF: E X = int_0^inf (1-F) - int_-inf^0 F, and
// E X^2 = 2 int_0^inf s (1-F) ds - 2 int_-inf^0 s F ds.
struct Moments {
  double mean = 0;
  double variance = 0;
};

inline Moments tracy_widom_moments(const TwTable& t) {
  double m1 = 0, m2 = 0;
  for (std::size_t i = 0; i + 1 < t.s.size(); ++i) {
    double a = t.s[i], b = t.s[i + 1];
    double mid = 0.5 * (a + b), h = b - a;
    double F = 0.5 * (t.F2[i] + t.F2[i + 1]);
    if (mid >= 0) {
      m1 += h * (1.0 - F);
      m2 += 2.0 * h * mid * (1.0 - F);
    } else {
      m1 -= h * F;
      m2 -= 2.0 * h * mid * F;
    }
  }
  return {m1, m2 - m1 * m1};
}

}  // namespace airylab
