#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/contours.hpp"
#include "airylab/quadrature.hpp"
#include "airylab/scaling.hpp"
#include "airylab/symbols.hpp"

namespace airylab {

struct QuadConfig {
  int nodes_per_panel = 24;
  double tol = 1e-7;       // requested agreement between refinement levels
  bool check_refinement = true;
};

struct KernelValue {
  double value = 0;
  double error_estimate = 0;
};

// ---------------------------------------------------------------------------
// Airy function by contour quadrature of (2 pi i)^{-1} \int e^{u^3/3 - x u} du
// over the wedge through max(1, sqrt(max(x,0))) at angles +-pi/3. The lower
// ray is the conjugate of the upper one, so Ai(x) = Im(upper integral) / pi.
// `derivative` differentiates under the integral (factor -u per order).
inline double airy_function(double x, int derivative = 0) {
  require(x >= -10.0 && x <= 10.0, "Airy evaluation supported on [-10, 10]");
  require(derivative >= 0 && derivative <= 2, "derivative order 0..2");
  // apex at the real saddle sqrt(x) for positive x; for negative x the
  // saddles are imaginary and a small apex keeps the peak magnitude (and
  // with it the cancellation error) low
  const double apex = std::max(0.1, std::sqrt(std::max(x, 0.0)));
  const complex dir(std::cos(pi / 3.0), std::sin(pi / 3.0));
  // truncation: Re(u^3/3 - xu) <= peak - 60
  auto logmag = [&](double r) {
    complex u = apex + r * dir;
    return (u * u * u / 3.0 - x * u).real();
  };
  double peak = logmag(0.0);
  double R = 0.5;
  while (R < 400.0) {
    peak = std::max(peak, logmag(R));
    if (logmag(R) < peak - 60.0) break;
    R += 0.5;
  }
  // panels sized to the local phase speed |u^2 - x| ~ |x| + r^2
  std::vector<double> edges{0.0};
  while (edges.back() < R) {
    double r = edges.back();
    edges.push_back(r + std::min(0.75, 5.0 / (1.0 + std::abs(x) + r * r)));
  }
  auto eval = [&](int deg) {
    PanelQuad q = panel_quadrature(edges, deg);
    complex total = 0.0;
    for (std::size_t i = 0; i < q.t.size(); ++i) {
      complex u = apex + q.t[i] * dir;
      complex f = std::exp(u * u * u / 3.0 - x * u);
      for (int d = 0; d < derivative; ++d) f *= -u;
      total += f * dir * q.w[i];
    }
    return total.imag() / pi;
  };
  double v1 = eval(20);
  double v2 = eval(30);
  if (std::abs(v1 - v2) > 1e-10)
    throw numeric_error("Airy quadrature did not converge", std::abs(v1 - v2));
  return v2;
}

// ---------------------------------------------------------------------------
// Airy line ensemble kernel K_A = H_A + J_A with
//   H_A = -1_{s>t} exp(-(x-y)^2 / (4(s-t))) / sqrt(4 pi (s-t))
//   J_A = (2 pi i)^{-2} \int_{G_u} \int_{G_v} G(x,s;v)/G(y,t;u) dv du/(u-v)
//   G(x,s;u) = exp(u x + u^2 s - u^3/3)
// with G_v the wedge through -1 at +-2pi/3 and G_u the wedge through +1
// at +-pi/3.

namespace detail {
inline double airy_truncation(double x, double s, bool u_side, double apex) {
  double ang = u_side ? pi / 3.0 : 2.0 * pi / 3.0;
  complex dir(std::cos(ang), std::sin(ang));
  complex base(u_side ? apex : -apex, 0.0);
  auto logmag = [&](double r) {
    complex v = base + r * dir;
    double e = (v * x + v * v * s - v * v * v / 3.0).real();
    return u_side ? -e : e;
  };
  double peak = logmag(0.0);
  double R = 6.0;
  for (double r = 6.0; r < 600.0; r *= 1.25) {
    peak = std::max(peak, logmag(r));
    R = r;
    if (logmag(r) < peak - 46.0) break;
  }
  return R;
}

struct AiryNodes {
  std::vector<complex> z;
  std::vector<complex> w;
};

inline AiryNodes airy_nodes(bool u_side, double apex, double R, int deg) {
  ContourPath c = build_contour_airy(u_side, apex, R);
  ContourQuad q = contour_quadrature(c, R, 0.5, deg);
  return {std::move(q.z), std::move(q.w)};
}
}  // namespace detail

inline KernelValue airy_kernel(double x, double s, double y, double t,
                               QuadConfig quad = {}) {
  require(std::isfinite(x) && std::isfinite(y) && std::isfinite(s) && std::isfinite(t),
          "finite arguments required");
  const double apex = 1.0;
  double Rv = detail::airy_truncation(x, s, false, apex);
  double Ru = detail::airy_truncation(y, t, true, apex);
  auto eval = [&](int deg) {
    auto nv = detail::airy_nodes(false, apex, Rv, deg);
    auto nu = detail::airy_nodes(true, apex, Ru, deg);
    // ratio factors evaluated in the exponent to avoid overflow
    std::vector<complex> fv(nv.z.size()), fu(nu.z.size());
    for (std::size_t j = 0; j < nv.z.size(); ++j) {
      complex v = nv.z[j];
      fv[j] = std::exp(v * x + v * v * s - v * v * v / 3.0) * nv.w[j];
    }
    for (std::size_t i = 0; i < nu.z.size(); ++i) {
      complex u = nu.z[i];
      fu[i] = std::exp(-(u * y + u * u * t - u * u * u / 3.0)) * nu.w[i];
    }
    complex sum = 0.0;
    for (std::size_t i = 0; i < nu.z.size(); ++i) {
      complex acc = 0.0;
      for (std::size_t j = 0; j < nv.z.size(); ++j) acc += fv[j] / (nu.z[i] - nv.z[j]);
      sum += fu[i] * acc;
    }
    const complex two_pi_i(0.0, 2.0 * pi);
    return (sum / (two_pi_i * two_pi_i)).real();
  };
  double v = eval(quad.nodes_per_panel);
  KernelValue out;
  out.value = v;
  if (quad.check_refinement) {
    double v2 = eval(quad.nodes_per_panel + quad.nodes_per_panel / 2);
    out.error_estimate = std::abs(v - v2);
    out.value = v2;
    if (out.error_estimate > quad.tol)
      throw numeric_error("Airy kernel quadrature did not converge", out.error_estimate);
  }
  if (s > t) {
    out.value += -std::exp(-(x - y) * (x - y) / (4.0 * (s - t))) /
                 std::sqrt(4.0 * pi * (s - t));
  }
  return out;
}

// Equal-time kernel matrix K_A(x_i, 0; x_j, 0) sharing one set of contour
// nodes; the (u - v)^{-1} coupling factorizes so the fill costs
// O(N_u N_v + (N_u + N_v) p^2) instead of p^2 full double integrals.
inline std::vector<double> airy_kernel_matrix(const std::vector<double>& xs,
                                              QuadConfig quad = {}) {
  const double apex = 1.0;
  double xmin = *std::min_element(xs.begin(), xs.end());
  double Rv = detail::airy_truncation(xmin, 0.0, false, apex);
  double Ru = detail::airy_truncation(xmin, 0.0, true, apex);
  auto nv = detail::airy_nodes(false, apex, Rv, quad.nodes_per_panel);
  auto nu = detail::airy_nodes(true, apex, Ru, quad.nodes_per_panel);
  std::size_t p = xs.size(), Nu = nu.z.size(), Nv = nv.z.size();
  std::vector<complex> A(Nv * p), B(Nu * p);
  for (std::size_t j = 0; j < Nv; ++j)
    for (std::size_t q = 0; q < p; ++q)
      A[j * p + q] = std::exp(nv.z[j] * xs[q] - nv.z[j] * nv.z[j] * nv.z[j] / 3.0) * nv.w[j];
  for (std::size_t i = 0; i < Nu; ++i)
    for (std::size_t q = 0; q < p; ++q)
      B[i * p + q] =
          std::exp(-(nu.z[i] * xs[q] - nu.z[i] * nu.z[i] * nu.z[i] / 3.0)) * nu.w[i];
  // C[i][q] = sum_j A[j][q] / (u_i - v_j)
  std::vector<complex> C(Nu * p, complex(0, 0));
  for (std::size_t i = 0; i < Nu; ++i)
    for (std::size_t j = 0; j < Nv; ++j) {
      complex inv = 1.0 / (nu.z[i] - nv.z[j]);
      for (std::size_t q = 0; q < p; ++q) C[i * p + q] += A[j * p + q] * inv;
    }
  const complex two_pi_i(0.0, 2.0 * pi);
  std::vector<double> K(p * p);
  for (std::size_t qx = 0; qx < p; ++qx)
    for (std::size_t qy = 0; qy < p; ++qy) {
      complex sum = 0.0;
      for (std::size_t i = 0; i < Nu; ++i) sum += B[i * p + qy] * C[i * p + qx];
      K[qx * p + qy] = (sum / (two_pi_i * two_pi_i)).real();
    }
  return K;
}

// Stationary-ensemble kernel (the process A(t) + t^2), used as an
// independent cross-check of K_A through the change of variables
// K_A(x,s;y,t) = exp((x + 2s^2/3) s - (y + 2t^2/3) t)
//                  * K_R(x + s^2, -s; y + t^2, -t).
// Its contour wedges are swapped relative to K_A and the coupling is
// 1/(v - u).
inline double stationary_airy_kernel(double x, double s, double y, double t,
                                     QuadConfig quad = {}) {
  const double apex = 1.0;
  // u lives on the left wedge (+-2pi/3), v on the right wedge (+-pi/3)
  double reach = std::max({std::abs(x) + s * s, std::abs(y) + t * t, 1.0});
  double Ru = detail::airy_truncation(reach, std::abs(s), false, apex);
  double Rv = detail::airy_truncation(reach, std::abs(t), true, apex);
  auto nu = detail::airy_nodes(false, apex, Ru, quad.nodes_per_panel);
  auto nv = detail::airy_nodes(true, apex, Rv, quad.nodes_per_panel);
  double pref = x * s - y * t - s * s * s / 3.0 + t * t * t / 3.0;
  complex sum = 0.0;
  for (std::size_t i = 0; i < nu.z.size(); ++i) {
    complex u = nu.z[i];
    complex fu = std::exp((y - t * t) * u + t * u * u - u * u * u / 3.0) * nu.w[i];
    complex acc = 0.0;
    for (std::size_t j = 0; j < nv.z.size(); ++j) {
      complex v = nv.z[j];
      complex fvv = std::exp(-(x - s * s) * v - s * v * v + v * v * v / 3.0) * nv.w[j];
      acc += fvv / (v - u);
    }
    sum += fu * acc;
  }
  const complex two_pi_i(0.0, 2.0 * pi);
  double J = (std::exp(pref) * sum / (two_pi_i * two_pi_i)).real();
  double H = 0.0;
  if (s < t)
    H = -std::exp(-(y - x) * (y - x) / (4.0 * (t - s)) - 0.5 * (t - s) * (y + x) +
                  std::pow(t - s, 3) / 12.0) /
        std::sqrt(4.0 * pi * (t - s));
  return H + J;
}

// ---------------------------------------------------------------------------
// Prelimit kernel K_{n,beta} = H + J on the walk lattice.

// H = -1_{s>t, x>y} beta^{x-y} binom(s-t, x-y); exact integer arithmetic
// through binom(62, .), log-gamma beyond.
inline double kernel_h_term(double beta, std::int64_t x, std::int64_t s, std::int64_t y,
                            std::int64_t t) {
  if (!(s > t && x > y)) return 0.0;
  std::int64_t N = s - t, K = x - y;
  if (K > N) return 0.0;
  if (N <= 62) {
    unsigned __int128 binom = 1;
    std::int64_t kk = std::min(K, N - K);
    for (std::int64_t i = 0; i < kk; ++i)
      binom = binom * static_cast<unsigned __int128>(N - i) /
              static_cast<unsigned __int128>(i + 1);
    return -std::pow(beta, static_cast<double>(K)) * static_cast<double>(binom);
  }
  double lg = std::lgamma(static_cast<double>(N) + 1) - std::lgamma(static_cast<double>(K) + 1) -
              std::lgamma(static_cast<double>(N - K) + 1);
  return -std::exp(static_cast<double>(K) * std::log(beta) + lg);
}

struct KernelQuery {
  // limit coordinates
  double x = 0, s = 0, y = 0, t = 0;
  // lattice coordinates; positions are integers, times are m_ref plus an
  // integer so that time differences are always exactly integral
  double xn = 0, sn = 0, yn = 0, tn = 0;
};

// Scaling translation for Bernoulli-walk scaling data:
//   s_n = m + floor(tau s),  x_n = floor(gamma + gamma' tau s - chi x)
// and the (y, t) analogues. A non-integer reference location (as produced
// by the companion map from a geometric model) is kept exact.
inline KernelQuery translate_query(const ScalingParams& p, double x, double s, double y,
                                   double t) {
  require(p.model == ModelTag::BernoulliWalks, "query translation needs Bernoulli scaling");
  KernelQuery q;
  q.x = x;
  q.s = s;
  q.y = y;
  q.t = t;
  q.sn = p.m_ref + std::floor(p.tau * s);
  q.tn = p.m_ref + std::floor(p.tau * t);
  q.xn = std::floor(p.g + p.g1 * p.tau * s - p.chi * x);
  q.yn = std::floor(p.g + p.g1 * p.tau * t - p.chi * y);
  return q;
}

namespace detail {
// Double contour sum of the conjugated integrand
//   exp(logF(x,s;w) - logF(x,s;delta)) * exp(logF(y,t;delta) - logF(y,t;z))
// over prebuilt node sets; each factor starts near 1 at the critical
// point and decays along its contour, so nothing overflows. Returns the
// sum multiplied by -(2 pi i)^{-2} (the z contour replaces Gamma_z with
// reversed orientation).
inline complex j_double_sum(const std::vector<complex>& wz, const std::vector<complex>& ww,
                            const std::vector<complex>& zz, const std::vector<complex>& zw,
                            const SymbolFns& sym, double xn, double sn, double yn, double tn) {
  const complex dc(sym.delta, 0.0);
  const complex ref_w = sym.logF(xn, sn, dc);
  const complex ref_z = sym.logF(yn, tn, dc);
  std::vector<complex> fw(wz.size()), fz(zz.size());
  for (std::size_t i = 0; i < wz.size(); ++i)
    fw[i] = std::exp(sym.logF(xn, sn, wz[i]) - ref_w) * ww[i];
  for (std::size_t j = 0; j < zz.size(); ++j)
    fz[j] = std::exp(ref_z - sym.logF(yn, tn, zz[j])) * zw[j];
  complex sum = 0.0;
  for (std::size_t i = 0; i < wz.size(); ++i) {
    complex acc = 0.0;
    for (std::size_t j = 0; j < zz.size(); ++j) acc += fz[j] / (wz[i] - zz[j]);
    sum += fw[i] / wz[i] * acc;
  }
  const complex two_pi_i(0.0, 2.0 * pi);
  return -sum / (two_pi_i * two_pi_i);
}
}  // namespace detail

// J term over the steepest descent/ascent contours with conjugation
// exp(log F(y_n,t_n;delta) - log F(x_n,s_n;delta)) folded into the
// integrand; multiply by chi afterwards for the rescaled kernel.
inline KernelValue conjugated_kernel(const SymbolFns& sym, const ScalingParams& params,
                                     const KernelQuery& q, QuadConfig quad = {}) {
  require(params.model == ModelTag::BernoulliWalks, "conjugated kernel needs Bernoulli scaling");
  require(close_rel(sym.delta, params.delta, 1e-9), "symbol/scaling mismatch");
  require(q.sn >= 0 && q.tn >= 0, "lattice times must be nonnegative");
  require(q.yn < q.tn + sym.n, "tail decay requires y_n < t_n + n");
  require(q.xn == std::floor(q.xn) && q.yn == std::floor(q.yn), "positions must be integers");
  const double eta = 1.0 / params.rho;
  ContourPath cw = build_contour_w(sym, std::min(eta, sym.delta / 20.0));
  ContourPath cz = build_contour_z(sym, std::min(eta, std::min(sym.delta, 1 - sym.delta) / 20.0));

  // query-aware truncation of the z side: walk outward until the z
  // exponent has dropped 46 nats below its start and keeps dropping
  auto z_exponent = [&](double t) { return -(sym.logF(q.yn, q.tn, cz.at(t))).real(); };
  double tz = std::isfinite(cz.t_end) ? cz.t_end : 0.0;
  if (!std::isfinite(cz.t_end)) {
    double base = z_exponent(0.0);
    double t = 10.0 * cz.eta;
    for (int i = 0; i < 500; ++i) {
      if (z_exponent(t) < base - 46.0 && z_exponent(t * 1.4) < z_exponent(t)) break;
      t *= 1.4;
      require(t < 1e12, "z contour truncation failed");
    }
    tz = t;
  }
  // fractional time powers are only valid when the branch point -1/beta
  // stays outside both contours and neither crosses the principal cut of
  // log(1 + beta v); otherwise fall back to floored times (the time
  // difference is integral either way, so the value stays a well-defined
  // lattice kernel entry)
  double sn = q.sn, tn = q.tn;
  if (sn != std::floor(sn) || tn != std::floor(tn)) {
    bool hazard = false;
    ContourQuad probe_w = contour_quadrature(cw, cw.t_end, cw.eta, 8);
    ContourQuad probe_z = contour_quadrature(cz, tz, cz.eta, 8);
    for (const complex& v : probe_w.z)
      if ((1.0 + params.beta * v).real() <= 0) hazard = true;
    for (const complex& v : probe_z.z)
      if ((1.0 + params.beta * v).real() <= 0) hazard = true;
    if (hazard) {
      sn = std::floor(sn);
      tn = std::floor(tn);
    }
  }
  auto eval = [&](int deg) {
    ContourQuad qw = contour_quadrature(cw, cw.t_end, cw.eta, deg);
    ContourQuad qz = contour_quadrature(cz, tz, cz.eta, deg);
    return detail::j_double_sum(qw.z, qw.w, qz.z, qz.w, sym, q.xn, sn, q.yn, tn);
  };
  complex j1 = eval(quad.nodes_per_panel);
  KernelValue out;
  double jv = j1.real();
  if (quad.check_refinement) {
    complex j2 = eval(quad.nodes_per_panel + quad.nodes_per_panel / 2);
    out.error_estimate = std::abs(j2 - j1) * params.chi;
    jv = j2.real();
    if (out.error_estimate > quad.tol * std::max(1.0, std::abs(jv) * params.chi))
      throw numeric_error("prelimit kernel quadrature did not converge", out.error_estimate);
  }
  // conjugated H term: chi * delta^{dx} (1+beta delta)^{-ds} * H; the time
  // difference s_n - t_n is exactly integral by construction
  double h = 0.0;
  double N = q.sn - q.tn, K = q.xn - q.yn;
  if (N > 0 && K > 0 && K <= N) {
    double lg = std::lgamma(N + 1) - std::lgamma(K + 1) - std::lgamma(N - K + 1);
    h = -std::exp(K * std::log(params.beta) + lg + K * std::log(sym.delta) -
                  N * std::log1p(params.beta * sym.delta));
  }
  out.value = params.chi * (jv + h);
  return out;
}

// Prelimit kernel by direct circle contours: |w| = 0.45 around the pole
// at 0 and |z - 1| = 0.45 around the pole at 1, trapezoid rule (spectral
// for periodic integrands). Reliable for moderate n and lattice offsets;
// the value is exact independent of the contour choice.
inline KernelValue prelimit_kernel(double n, double beta, const KernelQuery& q,
                                   QuadConfig quad = {}) {
  require(n >= 1 && beta > 0, "positive n, beta required");
  require(q.sn >= 0 && q.tn >= 0, "lattice times must be nonnegative");
  require(q.xn == std::floor(q.xn) && q.yn == std::floor(q.yn) && q.sn == std::floor(q.sn) &&
              q.tn == std::floor(q.tn),
          "circle evaluation needs integer lattice coordinates");
  const double rw = 0.45, rz = 0.45;
  auto eval = [&](int N) {
    complex sum = 0.0;
    std::vector<complex> zs(static_cast<std::size_t>(N)), zw(static_cast<std::size_t>(N));
    std::vector<complex> wsv(static_cast<std::size_t>(N)), wwv(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      double a = 2.0 * pi * (i + 0.5) / N;
      complex w = rw * complex(std::cos(a), std::sin(a));
      wsv[static_cast<std::size_t>(i)] = w;
      wwv[static_cast<std::size_t>(i)] = complex(0, 1) * w * (2.0 * pi / N);
      complex z = 1.0 + rz * complex(std::cos(a), std::sin(a));
      zs[static_cast<std::size_t>(i)] = z;
      zw[static_cast<std::size_t>(i)] = complex(0, 1) * (z - 1.0) * (2.0 * pi / N);
    }
    auto logF = [&](double xx, double ss, complex v) {
      return ss * std::log(1.0 + beta * v) + n * std::log(1.0 - v) - xx * std::log(v);
    };
    for (int i = 0; i < N; ++i) {
      complex w = wsv[static_cast<std::size_t>(i)];
      complex fw = std::exp(logF(static_cast<double>(q.xn), static_cast<double>(q.sn), w));
      complex acc = 0.0;
      for (int j = 0; j < N; ++j) {
        complex z = zs[static_cast<std::size_t>(j)];
        acc += std::exp(-logF(static_cast<double>(q.yn), static_cast<double>(q.tn), z)) *
               zw[static_cast<std::size_t>(j)] / (w - z);
      }
      sum += fw / w * acc * wwv[static_cast<std::size_t>(i)];
    }
    const complex two_pi_i(0.0, 2.0 * pi);
    return sum / (two_pi_i * two_pi_i);
  };
  complex v1 = eval(192);
  complex v2 = eval(288);
  KernelValue out;
  out.value = v2.real() + kernel_h_term(beta, static_cast<std::int64_t>(q.xn),
                                        static_cast<std::int64_t>(q.sn),
                                        static_cast<std::int64_t>(q.yn),
                                        static_cast<std::int64_t>(q.tn));
  out.error_estimate = std::abs(v2 - v1) + std::abs(v2.imag());
  if (quad.check_refinement && out.error_estimate > quad.tol * std::max(1.0, std::abs(out.value)))
    throw numeric_error("prelimit circle quadrature did not converge", out.error_estimate);
  return out;
}

// ---------------------------------------------------------------------------
// Divergence quantities of the edge scaling. Along a feasible
// sequence (n, beta, m) the three products delta rho, (delta + 1/beta) rho
// and (1 - delta) rho all diverge whenever chi does, and
// [(1 - delta) rho]^3 >= n holds identically.
struct ScaleDivergenceRow {
  double n = 0, beta = 0, m = 0;
  double chi = 0;
  double delta_rho = 0, delta_beta_rho = 0, one_minus_delta_rho = 0;
};

inline std::vector<ScaleDivergenceRow> scale_divergence(
    const std::vector<std::array<double, 3>>& sequence) {
  std::vector<ScaleDivergenceRow> rows;
  for (const auto& [n, beta, m] : sequence) {
    ScalingParams p = scaling_params(ModelTag::BernoulliWalks, n, beta, m);
    ScaleDivergenceRow r;
    r.n = n;
    r.beta = beta;
    r.m = m;
    r.chi = p.chi;
    r.delta_rho = p.delta * p.rho;
    r.delta_beta_rho = (p.delta + 1.0 / beta) * p.rho;
    r.one_minus_delta_rho = (1.0 - p.delta) * p.rho;
    if (std::pow(r.one_minus_delta_rho, 3) < n * (1.0 - 1e-12))
      throw invariant_error("[(1-delta) rho]^3 >= n violated");
    rows.push_back(r);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].chi > rows[i - 1].chi) {
      if (!(rows[i].delta_rho > rows[i - 1].delta_rho &&
            rows[i].delta_beta_rho > rows[i - 1].delta_beta_rho &&
            rows[i].one_minus_delta_rho > rows[i - 1].one_minus_delta_rho))
        throw invariant_error("divergence quantities must increase with chi");
    }
  }
  return rows;
}

}  // namespace airylab
