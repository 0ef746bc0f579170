#pragma once

#include <cmath>
#include <complex>

#include "airylab/common.hpp"

namespace airylab {

// Exponent data for the random-walk kernel with parameters (n, beta,
// alpha = m_n/n). With gamma_tilde = (sqrt(alpha beta) - 1)^2 / (1+beta):
//
//   F(x, s; w) = (1 + beta w)^s (1 - w)^n w^{-x}
//   log F(x_n, s_n; w) = s_n log beta + n L(w) + tau s L_t(w) + chi x L_x(w)
//   L(w)   = log(1-w) + alpha log(w + 1/beta) - gamma_tilde log(w)
//   L_t(w) = log(w + 1/beta) - gamma' log(w),   L_x(w) = log(w)
//
// L has a double critical point at the damping parameter
// delta = (sqrt(alpha beta) - 1) / (sqrt(alpha beta) + beta).
struct SymbolFns {
  double n = 0;
  double beta = 0;
  double alpha = 0;
  double gamma_tilde = 0;
  double gamma1 = 0;  // arctic slope gamma'(m_n), used by L_t
  double delta = 0;

  SymbolFns(double n_, double beta_, double alpha_) : n(n_), beta(beta_), alpha(alpha_) {
    require(n > 0 && beta > 0, "positive n, beta required");
    require(alpha * beta > 1.0, "need alpha beta > 1 for a curved edge");
    double r = std::sqrt(alpha * beta);
    gamma_tilde = (r - 1.0) * (r - 1.0) / (1.0 + beta);
    delta = (r - 1.0) / (r + beta);
    gamma1 = delta * beta / (1.0 + delta * beta);
  }

  complex L(complex w) const {
    return std::log(1.0 - w) + alpha * std::log(w + 1.0 / beta) - gamma_tilde * std::log(w);
  }
  complex L1(complex w) const {
    return -1.0 / (1.0 - w) + alpha / (w + 1.0 / beta) - gamma_tilde / w;
  }
  complex L2(complex w) const {
    return -1.0 / ((1.0 - w) * (1.0 - w)) - alpha / ((w + 1.0 / beta) * (w + 1.0 / beta)) +
           gamma_tilde / (w * w);
  }
  complex L3(complex w) const {
    return -2.0 / std::pow(1.0 - w, 3) + 2.0 * alpha / std::pow(w + 1.0 / beta, 3) -
           2.0 * gamma_tilde / (w * w * w);
  }
  complex Lt(complex w) const { return std::log(w + 1.0 / beta) - gamma1 * std::log(w); }
  complex Lt1(complex w) const { return 1.0 / (w + 1.0 / beta) - gamma1 / w; }
  complex Lt2(complex w) const {
    return -1.0 / ((w + 1.0 / beta) * (w + 1.0 / beta)) + gamma1 / (w * w);
  }
  complex Lx(complex w) const { return std::log(w); }
  complex Lx1(complex w) const { return 1.0 / w; }

  // Arg L'(w) as a continuous sum of factor angles (not reduced mod 2pi):
  // Arg L' = 2 Arg(w - delta) - Arg(w - 1) - Arg(w) - Arg(w + 1/beta).
  double arg_L1(complex w) const {
    return 2.0 * std::arg(w - delta) - std::arg(w - 1.0) - std::arg(w) -
           std::arg(w + 1.0 / beta);
  }

  // log F with integer arguments; exact for integral powers under any
  // branch of the complex logarithm.
  complex logF(double x, double s, complex w) const {
    return s * std::log(1.0 + beta * w) + n * std::log(1.0 - w) - x * std::log(w);
  }
};

}  // namespace airylab
