#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/lpp.hpp"
#include "airylab/walks.hpp"

namespace airylab {

enum class ModelTag {
  GeometricLPP,
  BernoulliWalks,
  ExponentialLPP,
  PoissonLines,
  BrownianLPP,
  PoissonPlane,
  SeppalainenJohansson,
};

inline std::string model_name(ModelTag m) {
  switch (m) {
    case ModelTag::GeometricLPP: return "geometric";
    case ModelTag::BernoulliWalks: return "bernoulli";
    case ModelTag::ExponentialLPP: return "exponential";
    case ModelTag::PoissonLines: return "poisson_lines";
    case ModelTag::BrownianLPP: return "brownian";
    case ModelTag::PoissonPlane: return "poisson_plane";
    case ModelTag::SeppalainenJohansson: return "seppalainen_johansson";
  }
  return "?";
}

struct CurveValue {
  double g = 0, d1 = 0, d2 = 0;
};

// Arctic curve (deterministic leading-order profile) with first two
// derivatives in the running coordinate (m, t or s depending on model).
// Flat branches (indicator zero) return zero curve and derivatives for
// Bernoulli; the Nordic curve degenerates to g = m there.
inline CurveValue arctic_curve(ModelTag model, double n, double beta, double m) {
  switch (model) {
    case ModelTag::GeometricLPP: {
      require(n > 0 && beta > 0 && m > 0, "geometric curve needs positive n, beta, m");
      double c = n * (1.0 / beta) * (1.0 + 1.0 / beta);
      return {(m + n) / beta + 2.0 * std::sqrt(c * m), 1.0 / beta + std::sqrt(c / m),
              -0.5 * std::sqrt(c) * std::pow(m, -1.5)};
    }
    case ModelTag::BernoulliWalks: {
      require(n > 0 && beta > 0 && m > 0, "Bernoulli curve needs positive n, beta, m");
      if (m * beta <= n) return {0.0, 0.0, 0.0};
      double r = std::sqrt(m * beta) - std::sqrt(n);
      return {r * r / (1.0 + beta),
              std::sqrt(beta) * r / (std::sqrt(m) * (1.0 + beta)),
              std::sqrt(n * beta) / (2.0 * std::pow(m, 1.5) * (1.0 + beta))};
    }
    case ModelTag::ExponentialLPP: {
      require(n > 0 && m > 0, "exponential curve needs positive n, m");
      return {n + m + 2.0 * std::sqrt(n * m), 1.0 + std::sqrt(n / m),
              -0.5 * std::sqrt(n) * std::pow(m, -1.5)};
    }
    case ModelTag::PoissonLines: {
      require(n > 0 && m > 0, "Poisson lines curve needs positive n, t");
      return {m + 2.0 * std::sqrt(m * n), 1.0 + std::sqrt(n / m),
              -0.5 * std::sqrt(n) * std::pow(m, -1.5)};
    }
    case ModelTag::BrownianLPP: {
      require(n > 0 && m > 0, "Brownian curve needs positive n, t");
      return {2.0 * std::sqrt(m * n), std::sqrt(n / m), -0.5 * std::sqrt(n) * std::pow(m, -1.5)};
    }
    case ModelTag::PoissonPlane: {
      require(m > 0, "planar curve needs positive s");
      return {2.0 * std::sqrt(m), 1.0 / std::sqrt(m), -0.5 * std::pow(m, -1.5)};
    }
    case ModelTag::SeppalainenJohansson: {
      require(n > 0 && beta > 0 && m > 0, "Nordic curve needs positive n, beta, m");
      if (m <= n * beta) return {m, 1.0, 0.0};
      double r = std::sqrt(m) - std::sqrt(n * beta);
      return {m - r * r / (1.0 + beta),
              (beta + std::sqrt(n * beta / m)) / (1.0 + beta),
              -std::sqrt(n * beta) / (2.0 * std::pow(m, 1.5) * (1.0 + beta))};
    }
  }
  throw argument_error("unknown model");
}

// Effective step variance of the edge walk; the factor multiplying tau in
// the Brownian-matching relation (variance factor) * tau = 2 chi^2.
inline double variance_factor(ModelTag model, double d1) {
  switch (model) {
    case ModelTag::GeometricLPP: return d1 * (1.0 + d1);
    case ModelTag::BernoulliWalks: return d1 * (1.0 - d1);
    case ModelTag::ExponentialLPP: return d1 * d1;
    case ModelTag::PoissonLines: return d1;
    case ModelTag::BrownianLPP: return 1.0;
    case ModelTag::PoissonPlane: return d1;
    case ModelTag::SeppalainenJohansson: return d1 * (1.0 - d1);
  }
  throw argument_error("unknown model");
}

// KPZ scaling data at a reference location: curve value/derivatives,
// temporal scale tau and spatial scale chi solving
//   v(g') tau = 2 chi^2   and   |g''|/2 * tau^2 / chi = 1,
// the damping parameter delta and rho = chi/delta for Bernoulli walks,
// and the linear shift h(m) = g + (m - m_ref) g'.
struct ScalingParams {
  ModelTag model = ModelTag::GeometricLPP;
  double n = 0;
  double beta = 0;
  double m_ref = 0;
  double g = 0, g1 = 0, g2 = 0;
  double tau = 0, chi = 0;
  double delta = 0, rho = 0;  // populated for BernoulliWalks

  double h(double m) const { return g + (m - m_ref) * g1; }
  bool has_damping() const { return model == ModelTag::BernoulliWalks; }
};

inline ScalingParams scaling_params(ModelTag model, double n, double beta, double m_ref) {
  CurveValue c = arctic_curve(model, n, beta, m_ref);
  if (c.d2 == 0.0) throw domain_error("second derivative vanishes: outside the curved branch");
  double v = variance_factor(model, c.d1);
  if (v <= 0.0) throw domain_error("degenerate step variance at reference point");
  bool concave = model != ModelTag::BernoulliWalks;
  if (concave ? c.d2 >= 0 : c.d2 <= 0)
    throw domain_error("curvature sign violates the model convention");
  double a2 = std::abs(c.d2);
  ScalingParams p;
  p.model = model;
  p.n = n;
  p.beta = beta;
  p.m_ref = m_ref;
  p.g = c.g;
  p.g1 = c.d1;
  p.g2 = c.d2;
  p.tau = std::cbrt(2.0 * v / (a2 * a2));
  p.chi = std::cbrt(v * v / (2.0 * a2));
  if (model == ModelTag::BernoulliWalks) {
    p.delta = c.d1 / (beta * (1.0 - c.d1));
    p.rho = p.chi / p.delta;
    if (!(p.delta > 0 && p.delta < 1)) throw domain_error("damping parameter outside (0,1)");
    if (!close_rel(p.delta * beta / (1.0 + p.delta * beta), c.d1, 1e-12))
      throw invariant_error("damping identity failed");
  }
  if (!(p.tau > 0 && p.chi > 0)) throw domain_error("nonpositive scaling parameters");
  if (!close_rel(v * p.tau, 2.0 * p.chi * p.chi, 1e-12) ||
      !close_rel(0.5 * a2 * p.tau * p.tau / p.chi, 1.0, 1e-12))
    throw invariant_error("scaling relations violated");
  return p;
}

// Companion Bernoulli location for a geometric model: mbar = m + g(m).
// The geometric and Bernoulli scalings then satisfy gbar(mbar) = m,
// tau = gbar' taubar and chi = (1 + g') chibar.
inline double companion_bernoulli_m(double n, double beta, double m) {
  return m + arctic_curve(ModelTag::GeometricLPP, n, beta, m).g;
}

// Affine maps of the plane as 3x3 matrices [[A, b], [0, 1]].
struct AffineMap2D {
  std::array<std::array<double, 3>, 3> a{};

  static AffineMap2D identity() {
    AffineMap2D m;
    for (int i = 0; i < 3; ++i) m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return m;
  }
  AffineMap2D operator*(const AffineMap2D& o) const {
    AffineMap2D r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k)
          s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
               o.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        r.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      }
    return r;
  }
  AffineMap2D inverse() const {
    // Gauss-Jordan on the 3x3 block
    std::array<std::array<double, 6>, 3> w{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 3)] = 1.0;
    }
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r = c + 1; r < 3; ++r)
        if (std::abs(w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
            std::abs(w[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
          piv = r;
      std::swap(w[static_cast<std::size_t>(piv)], w[static_cast<std::size_t>(c)]);
      double d = w[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      if (d == 0.0) throw invariant_error("affine map not invertible");
      for (int j = 0; j < 6; ++j) w[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] /= d;
      for (int r = 0; r < 3; ++r) {
        if (r == c) continue;
        double f = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int j = 0; j < 6; ++j)
          w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
              f * w[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
      }
    }
    AffineMap2D r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 3)];
    return r;
  }
};

// Residual map M_n^{-1} B^{-1} L_n comparing the geometric rescaling M_n,
// the shear B between geometric and Bernoulli graphs, and the Bernoulli
// rescaling L_n at the companion location. Unit diagonal with one
// off-diagonal entry -chibar / (taubar * gammabar') that vanishes as the
// Bernoulli spatial scale diverges.
struct ShearResidual {
  AffineMap2D residual;
  ScalingParams geometric;
  ScalingParams bernoulli;
  double off_diagonal() const { return residual.a[0][1]; }
};

inline ShearResidual shear_residual(double n, double beta, double m_n) {
  ScalingParams geo = scaling_params(ModelTag::GeometricLPP, n, beta, m_n);
  double mbar = companion_bernoulli_m(n, beta, m_n);
  ScalingParams ber = scaling_params(ModelTag::BernoulliWalks, n, beta, mbar);
  AffineMap2D M, L, B;
  M.a = {{{geo.tau, 0, m_n}, {geo.g1 * geo.tau, geo.chi, geo.g}, {0, 0, 1}}};
  L.a = {{{ber.tau, 0, mbar}, {ber.g1 * ber.tau, -ber.chi, ber.g}, {0, 0, 1}}};
  B.a = {{{1, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
  ShearResidual r;
  r.residual = M.inverse() * B.inverse() * L;
  r.geometric = geo;
  r.bernoulli = ber;
  return r;
}

// Rescaled line family: line k sampled on a t mesh.
struct RescaledLines {
  std::vector<double> t_mesh;
  std::vector<std::vector<double>> lines;  // [k-1][ti]
};

// Models with integer running coordinate floor the time shift tau * t;
// the continuous-time models scale without flooring.
inline bool discrete_time_model(ModelTag m) {
  return m == ModelTag::GeometricLPP || m == ModelTag::BernoulliWalks ||
         m == ModelTag::ExponentialLPP || m == ModelTag::SeppalainenJohansson;
}

inline double rescaled_location(const ScalingParams& p, double t) {
  double shift = p.tau * t;
  if (discrete_time_model(p.model)) shift = std::floor(shift);
  return p.m_ref + shift;
}

// Edge rescaling of passage profiles: (L_k - L_{k-1} - h)(m_ref + floor(tau t)) / chi
// for lattice models, without the floor for continuous ones. The profile
// must cover the shifted locations. `flip` negates the output.
inline RescaledLines rescale_profile(const PassageProfile& prof, const ScalingParams& params,
                                     const std::vector<double>& t_mesh, bool flip = false) {
  RescaledLines out;
  out.t_mesh = t_mesh;
  out.lines.assign(static_cast<std::size_t>(prof.k_max), {});
  double sign = flip ? -1.0 : 1.0;
  for (double t : t_mesh) {
    double m = rescaled_location(params, t);
    std::size_t mi = 0;
    bool found = false;
    for (std::size_t i = 0; i < prof.m_values.size(); ++i)
      if (std::abs(prof.m_values[i] - m) < 1e-9) {
        mi = i;
        found = true;
        break;
      }
    if (!found) throw range_error("profile does not cover the rescaled location");
    for (int k = 1; k <= prof.k_max; ++k)
      out.lines[static_cast<std::size_t>(k - 1)].push_back(
          sign * (prof.increment(k, mi) - params.h(m)) / params.chi);
  }
  return out;
}

// Edge rescaling of Bernoulli walk ensembles: (h - X_k)(m_ref + floor(tau t)) / chi.
inline RescaledLines rescale_walks(const WalkEnsemble& ens, const ScalingParams& params,
                                   const std::vector<double>& t_mesh, bool flip = false) {
  RescaledLines out;
  out.t_mesh = t_mesh;
  out.lines.assign(static_cast<std::size_t>(ens.n), {});
  double sign = flip ? -1.0 : 1.0;
  for (double t : t_mesh) {
    double m = rescaled_location(params, t);
    int mi = static_cast<int>(m);
    if (mi < 0 || mi > ens.horizon) throw range_error("t mesh outside simulated horizon");
    for (int k = 1; k <= ens.n; ++k)
      out.lines[static_cast<std::size_t>(k - 1)].push_back(
          sign * (params.h(m) - ens.value(k, mi)) / params.chi);
  }
  return out;
}

}  // namespace airylab
