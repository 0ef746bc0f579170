#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "airylab/contours.hpp"
#include "airylab/env.hpp"
#include "airylab/fredholm.hpp"
#include "airylab/io.hpp"
#include "airylab/kernels.hpp"
#include "airylab/lpp.hpp"
#include "airylab/parallel.hpp"
#include "airylab/scaling.hpp"
#include "airylab/stats.hpp"
#include "airylab/walks.hpp"

namespace airylab {

// Acceptance checks. Each check pins its tolerance in code; the small
// suite only reduces Monte Carlo sample counts (with correspondingly
// widened sampling tolerances) so it can run as a smoke test.
struct CheckResult {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  bool pass = false;
  double seconds = 0;
  std::string detail;

  std::string to_json() const {
    std::ostringstream os;
    os << "{\"test\":\"" << name << "\",\"statistic\":" << fmt_double(statistic)
       << ",\"threshold\":" << fmt_double(threshold) << ",\"pass\":" << (pass ? "true" : "false")
       << ",\"seconds\":" << fmt_double(seconds) << "}";
    return os.str();
  }
};

enum class Suite { Small, Full };

namespace verify_detail {

using Clock = std::chrono::steady_clock;

inline CheckResult finish(CheckResult r, Clock::time_point start) {
  r.seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start).count();
  return r;
}

// 1. insertion vs exhaustive enumeration, exact, on grids up to 4x4
inline CheckResult check_oracle_equivalence(Suite suite, int) {
  auto start = Clock::now();
  CheckResult r{"oracle_equivalence", 0, 0, false, 0, ""};
  int trials = suite == Suite::Full ? 1000 : 200;
  RngStream master(90210);
  std::int64_t mismatches = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RngStream s = master.substream(static_cast<std::uint64_t>(trial));
    int n = 1 + static_cast<int>(s.next_u64() % 4);
    int m = 1 + static_cast<int>(s.next_u64() % 4);
    WeightGrid g;
    g.n_cols = m;
    g.n_rows = n;
    g.env = EnvKind::geometric(1.0);
    for (int i = 0; i < n * m; ++i)
      g.weights.push_back(static_cast<double>(s.next_u64() % 4));
    PassageProfile p = passage_profile_rsk(g, n, {m});
    for (int k = 1; k <= n; ++k)
      if (p.value(k, 0) != passage_profile_bruteforce(g, k, m)) ++mismatches;
  }
  r.statistic = static_cast<double>(mismatches);
  r.threshold = 0;
  r.pass = mismatches == 0;
  return finish(r, start);
}

// 2. passage differences vs rejection-sampled nonintersecting walks
inline CheckResult check_distributional_identity(Suite suite, int workers) {
  auto start = Clock::now();
  CheckResult r{"distributional_identity", 0, suite == Suite::Full ? 0.02 : 0.04, false, 0, ""};
  const std::int64_t reps = suite == Suite::Full ? 100000 : 10000;
  const int horizon = 3, guard = 100;
  auto lhs_keys = parallel_map_replicas<std::int64_t>(
      reps,
      [&](std::int64_t rep) {
        WalkEnsemble a =
            sample_ni_geometric(2, 1.0, horizon, 1111, static_cast<std::uint64_t>(rep));
        return static_cast<std::int64_t>(a.value(1, horizon)) * 4096 +
               static_cast<std::int64_t>(a.value(2, horizon));
      },
      workers);
  auto rhs_keys = parallel_map_replicas<std::int64_t>(
      reps,
      [&](std::int64_t rep) {
        WalkEnsemble b = sample_ni_geometric_rejection(2, 1.0, horizon, guard, 2222,
                                                       static_cast<std::uint64_t>(rep));
        return static_cast<std::int64_t>(b.value(1, horizon)) * 4096 +
               static_cast<std::int64_t>(b.value(2, horizon));
      },
      workers);
  std::map<std::int64_t, std::int64_t> lhs, rhs;
  for (auto k : lhs_keys) ++lhs[k];
  for (auto k : rhs_keys) ++rhs[k];
  r.statistic = tv_distance(DiscreteLaw::from_counts(lhs), DiscreteLaw::from_counts(rhs));
  r.pass = r.statistic <= r.threshold;
  return finish(r, start);
}

// 3. shear correspondence: invariants en masse plus the fixed-time gap law
inline CheckResult check_shear_correspondence(Suite suite, int workers) {
  auto start = Clock::now();
  CheckResult r{"shear_correspondence", 0, suite == Suite::Full ? 0.02 : 0.04, false, 0, ""};
  const std::int64_t ensembles = suite == Suite::Full ? 10000 : 1000;
  auto violations = parallel_map_replicas<int>(
      ensembles,
      [&](std::int64_t rep) {
        int n = 2 + static_cast<int>(rep % 4);  // 2..5
        WalkEnsemble p =
            sample_ni_geometric(n, 1.0, 14, 3333, static_cast<std::uint64_t>(rep));
        try {
          shear_to_bernoulli(p).assert_invariants();
          return 0;
        } catch (const invariant_error&) {
          return 1;
        }
      },
      workers);
  std::int64_t bad = 0;
  for (int v : violations) bad += v;
  const std::int64_t reps = suite == Suite::Full ? 100000 : 10000;
  const int s_time = 4;
  auto lhs_keys = parallel_map_replicas<std::int64_t>(
      reps,
      [&](std::int64_t rep) {
        WalkEnsemble p =
            sample_ni_geometric(2, 1.0, s_time + 6, 4444, static_cast<std::uint64_t>(rep));
        WalkEnsemble x = shear_to_bernoulli(p, s_time);
        return static_cast<std::int64_t>(x.value(2, s_time) - x.value(1, s_time));
      },
      workers);
  auto rhs_keys = parallel_map_replicas<std::int64_t>(
      reps,
      [&](std::int64_t rep) {
        WalkEnsemble y = sample_ni_bernoulli_rejection(2, 1.0, s_time, 100, 5555,
                                                       static_cast<std::uint64_t>(rep));
        return static_cast<std::int64_t>(y.value(2, s_time) - y.value(1, s_time));
      },
      workers);
  std::map<std::int64_t, std::int64_t> lhs, rhs;
  for (auto k : lhs_keys) ++lhs[k];
  for (auto k : rhs_keys) ++rhs[k];
  double tv = tv_distance(DiscreteLaw::from_counts(lhs), DiscreteLaw::from_counts(rhs));
  r.statistic = std::max(tv, static_cast<double>(bad));
  std::ostringstream d;
  d << "invariant_violations=" << bad << " gap_tv=" << tv;
  r.detail = d.str();
  r.pass = bad == 0 && tv <= r.threshold;
  return finish(r, start);
}

struct ScalingGridPoint {
  double n, beta, ratio;
};

inline std::vector<ScalingGridPoint> scaling_grid() {
  std::vector<ScalingGridPoint> pts;
  std::vector<double> ns, betas, ratios;
  for (int i = 0; i < 10; ++i) {
    ns.push_back(std::round(10.0 * std::pow(10.0, 3.0 * i / 9.0)));
    betas.push_back(std::pow(10.0, -2.0 + 4.0 * i / 9.0));
    ratios.push_back(1.1 * std::pow(10.0, 4.0 * i / 9.0));
  }
  for (double n : ns)
    for (double b : betas)
      for (double q : ratios) pts.push_back({n, b, q});
  return pts;
}

// 4. the two scaling systems, closed-form derivatives, homogeneity
inline CheckResult check_scaling_systems(Suite, int) {
  auto start = Clock::now();
  CheckResult r{"scaling_systems", 0, 1e-12, false, 0, ""};
  double worst_sys = 0, worst_fd = 0, worst_hom = 0;
  for (const auto& p : scaling_grid()) {
    // geometric model at m = ratio * n
    {
      ScalingParams sp = scaling_params(ModelTag::GeometricLPP, p.n, p.beta, p.ratio * p.n);
      double v = sp.g1 * (1 + sp.g1);
      worst_sys = std::max(worst_sys,
                           std::abs(v * sp.tau - 2 * sp.chi * sp.chi) / (v * sp.tau));
      worst_sys = std::max(worst_sys, std::abs(-sp.g2 / 2 * sp.tau * sp.tau / sp.chi - 1.0));
      double g1n = arctic_curve(ModelTag::GeometricLPP, 1, p.beta, p.ratio).g;
      worst_hom = std::max(worst_hom, std::abs(sp.g - p.n * g1n) / std::abs(sp.g));
    }
    // Bernoulli model at m = ratio * n / beta (so m beta / n = ratio > 1)
    {
      double m = p.ratio * p.n / p.beta;
      ScalingParams sp = scaling_params(ModelTag::BernoulliWalks, p.n, p.beta, m);
      double v = sp.g1 * (1 - sp.g1);
      worst_sys = std::max(worst_sys,
                           std::abs(v * sp.tau - 2 * sp.chi * sp.chi) / (v * sp.tau));
      worst_sys = std::max(worst_sys, std::abs(sp.g2 / 2 * sp.tau * sp.tau / sp.chi - 1.0));
      // derivatives against central differences
      double h = m * 1e-5;
      double gp = arctic_curve(ModelTag::BernoulliWalks, p.n, p.beta, m + h).g;
      double gm = arctic_curve(ModelTag::BernoulliWalks, p.n, p.beta, m - h).g;
      worst_fd = std::max(worst_fd, std::abs((gp - gm) / (2 * h) - sp.g1) /
                                        std::max(1e-300, std::abs(sp.g1)));
    }
    {
      double m = p.ratio * p.n;
      double h = m * 1e-5;
      CurveValue c = arctic_curve(ModelTag::GeometricLPP, p.n, p.beta, m);
      double gp = arctic_curve(ModelTag::GeometricLPP, p.n, p.beta, m + h).g;
      double gm = arctic_curve(ModelTag::GeometricLPP, p.n, p.beta, m - h).g;
      worst_fd =
          std::max(worst_fd, std::abs((gp - gm) / (2 * h) - c.d1) / std::abs(c.d1));
    }
  }
  r.statistic = std::max(worst_sys, worst_hom);
  std::ostringstream d;
  d << "system=" << worst_sys << " homogeneity=" << worst_hom << " fd=" << worst_fd;
  r.detail = d.str();
  r.pass = worst_sys <= 1e-12 && worst_hom <= 1e-12 && worst_fd <= 1e-6;
  return finish(r, start);
}

// 5. critical point and Taylor identities across the same grid
inline CheckResult check_critical_point(Suite, int) {
  auto start = Clock::now();
  CheckResult r{"critical_point_taylor", 0, 1e-10, false, 0, ""};
  double worst = 0;
  for (const auto& p : scaling_grid()) {
    double m = p.ratio * p.n / p.beta;
    ScalingParams sp = scaling_params(ModelTag::BernoulliWalks, p.n, p.beta, m);
    SymbolFns sym(p.n, p.beta, m / p.n);
    complex d(sym.delta, 0.0);
    // normalize |L'| by the local scale of L' coefficients
    double scale = std::abs(sym.alpha / (sym.delta + 1 / sym.beta)) + 1.0 / (1.0 - sym.delta) +
                   sym.gamma_tilde / sym.delta;
    worst = std::max(worst, std::abs(sym.L1(d)) / scale);
    worst = std::max(worst,
                     std::abs(-2 * std::pow(sp.rho, 3) / sym.L3(d).real() - p.n) / p.n);
    worst = std::max(worst, std::abs(2 * sp.rho * sp.rho / sym.Lt2(d).real() - sp.tau) / sp.tau);
    worst = std::max(worst, std::abs(sp.rho / sym.Lx1(d).real() - sp.chi) / sp.chi);
  }
  r.statistic = worst;
  r.pass = worst <= r.threshold;
  return finish(r, start);
}

// 6. contour structure and monotonicity of Re L beyond the 2 eta window
inline CheckResult check_contours(Suite, int) {
  auto start = Clock::now();
  CheckResult r{"contour_properties", 0, 0, false, 0, ""};
  std::int64_t violations = 0;
  int combos = 0;
  for (double alpha : {1.1, 3.0, 10.0, 100.0, 1e3, 1e4}) {
    for (double beta : {1e-2, 0.1, 0.5, 1.0, 10.0, 100.0}) {
      if (alpha * beta <= 1.05) continue;  // outside the curved branch
      ++combos;
      SymbolFns sym(25, beta, alpha);
      double eta_w = sym.delta / 20.0;
      ContourPath cw = build_contour_w(sym, eta_w);
      if (std::abs(cw.at(0.0) - complex(sym.delta - eta_w, 0)) > 1e-14) ++violations;
      if (std::abs(cw.tangent_at(1e-13) - std::polar(1.0, 2 * pi / 3)) > 1e-9) ++violations;
      if (!(cw.at(cw.t_end).real() < 0) || std::abs(cw.at(cw.t_end).imag()) > 1e-9)
        ++violations;
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 1000; ++i) {
        double t = 2 * eta_w + (cw.t_end - 2 * eta_w) * i / 1000.0;
        complex z = cw.at(t);
        if (std::abs(z) > sym.delta - eta_w + 1e-12) ++violations;
        if (std::abs(cw.at(-t) - std::conj(z)) > 1e-13) ++violations;
        double re = sym.L(z).real();
        if (re > prev + 1e-10 * (1 + std::abs(re))) ++violations;
        prev = std::min(prev, re);
      }
      double eta_z = std::min(sym.delta, 1 - sym.delta) / 20.0;
      ContourPath cz = build_contour_z(sym, eta_z);
      if (std::abs(cz.at(0.0) - complex(sym.delta + eta_z, 0)) > 1e-14) ++violations;
      if (std::abs(cz.tangent_at(1e-13) - std::polar(1.0, 4 * pi / 9)) > 1e-9) ++violations;
      if (cz.kind == ContourKind::ZCase1 &&
          !(cz.at(cz.t_end).real() > 1.0 && std::abs(cz.at(cz.t_end).imag()) < 1e-9))
        ++violations;
      double tmax = std::isfinite(cz.t_end) ? cz.t_end : truncate_by_descent(sym, cz, 80.0);
      prev = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 1000; ++i) {
        double t = 2 * eta_z + (tmax - 2 * eta_z) * i / 1000.0;
        complex z = cz.at(t);
        if (std::abs(z) < sym.delta + eta_z - 1e-10) ++violations;
        if (std::abs(cz.at(-t) - std::conj(z)) > 1e-12 * std::abs(z)) ++violations;
        double re = sym.L(z).real();
        if (re < prev - 1e-10 * (1 + std::abs(re))) ++violations;
        prev = std::max(prev, re);
      }
    }
  }
  r.statistic = static_cast<double>(violations);
  std::ostringstream d;
  d << combos << " feasible (alpha, beta) combinations";
  r.detail = d.str();
  r.pass = violations == 0;
  return finish(r, start);
}

// 7. Airy kernel against the projection-kernel oracle and closed forms
inline CheckResult check_airy_kernel(Suite, int) {
  auto start = Clock::now();
  CheckResult r{"airy_kernel", 0, 1e-6, false, 0, ""};
  double worst = 0;
  auto classical = [&](double x, double y) {
    PanelQuad q = panel_quadrature({0.0, 0.5, 1.0, 2.0, 4.0, 8.0}, 32);
    double s = 0;
    for (std::size_t i = 0; i < q.t.size(); ++i)
      s += airy_function(x + q.t[i]) * airy_function(y + q.t[i]) * q.w[i];
    return s;
  };
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0})
      worst = std::max(worst, std::abs(airy_kernel(x, 0, y, 0).value - classical(x, y)));
  double ai0 = std::abs(airy_function(0.0) - 0.3550280538878172392600);
  double aip0 = std::abs(airy_function(0.0, 1) - (-0.2588194037928067984051));
  RngStream s(112233);
  double worst_stat = 0;
  for (int i = 0; i < 5; ++i) {
    double x = 2 * s.next_uniform() - 1, y = 2 * s.next_uniform() - 1;
    double ss = 1.2 * s.next_uniform() - 0.6, tt = 1.2 * s.next_uniform() - 0.6;
    double lhs = airy_kernel(x, ss, y, tt).value;
    double rhs = std::exp((x + 2.0 / 3 * ss * ss) * ss - (y + 2.0 / 3 * tt * tt) * tt) *
                 stationary_airy_kernel(x + ss * ss, -ss, y + tt * tt, -tt);
    worst_stat = std::max(worst_stat, std::abs(lhs - rhs));
  }
  r.statistic = std::max({worst, worst_stat});
  std::ostringstream d;
  d << "projection=" << worst << " ai_closed_forms=" << std::max(ai0, aip0)
    << " stationary_identity=" << worst_stat;
  r.detail = d.str();
  r.pass = worst <= 1e-6 && ai0 <= 1e-8 && aip0 <= 1e-8 && worst_stat <= 1e-6;
  return finish(r, start);
}

// 8. kernel convergence trend and tail decay
inline CheckResult check_kernel_trend(Suite, int) {
  auto start = Clock::now();
  CheckResult r{"kernel_convergence_trend", 0, 0, false, 0, ""};
  double beta = 1.0;
  std::vector<double> errs;
  for (double n : {50.0, 100.0, 200.0}) {
    double mbar = companion_bernoulli_m(n, beta, n);
    ScalingParams p = scaling_params(ModelTag::BernoulliWalks, n, beta, mbar);
    SymbolFns sym(n, beta, mbar / n);
    double worst = 0;
    for (double x : {-1.0, 0.0, 1.0})
      for (double y : {-1.0, 0.0, 1.0}) {
        KernelQuery q = translate_query(p, x, 0.0, y, 0.0);
        worst = std::max(worst, std::abs(conjugated_kernel(sym, p, q).value -
                                         airy_kernel(x, 0, y, 0).value));
      }
    errs.push_back(worst);
  }
  bool decreasing = errs[1] < errs[0] && errs[2] < errs[1];
  // decay rate of |K~(x,0;y,0)| in x + y on [0,4]^2 at n = 100
  double n = 100, mbar = companion_bernoulli_m(n, beta, n);
  ScalingParams p = scaling_params(ModelTag::BernoulliWalks, n, beta, mbar);
  SymbolFns sym(n, beta, mbar / n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (double x = 0; x <= 4.0; x += 1.0)
    for (double y = 0; y <= 4.0; y += 1.0) {
      KernelQuery q = translate_query(p, x, 0.0, y, 0.0);
      double v = std::abs(conjugated_kernel(sym, p, q).value);
      if (v < 1e-300) continue;
      double u = x + y, l = std::log(v);
      sx += u;
      sy += l;
      sxx += u * u;
      sxy += u * l;
      ++cnt;
    }
  double rate = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  r.statistic = errs[2];
  std::ostringstream d;
  d << "errors=" << errs[0] << "," << errs[1] << "," << errs[2] << " decay_rate=" << rate;
  r.detail = d.str();
  r.pass = decreasing && rate > 0;
  return finish(r, start);
}

// 9. determinantal intensities against the rejection sampler
inline CheckResult check_determinantal_intensity(Suite suite, int workers) {
  auto start = Clock::now();
  CheckResult r{"determinantal_intensity", 0, suite == Suite::Full ? 0.02 : 0.05, false, 0, ""};
  const std::int64_t samples = suite == Suite::Full ? 100000 : 10000;
  const int guard = 100;
  double worst = 0;
  std::ostringstream d;
  for (int n : {2, 3}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      // one shared sample batch per (n, beta), evaluated at two times
      const int horizon = 5;
      std::uint64_t seed = 7000 + static_cast<std::uint64_t>(n * 10 + beta * 4);
      auto batch = parallel_map_replicas<WalkEnsemble>(
          samples,
          [&](std::int64_t rep) {
            return sample_ni_bernoulli_rejection(n, beta, horizon, guard, seed,
                                                 static_cast<std::uint64_t>(rep));
          },
          workers);
      for (int time : {3, 5}) {
        std::int64_t hi = time + n - 1;
        std::int64_t lo = (time + n) / 2;
        IntensityReport rep =
            counting_intensity_check(n, beta, time, lo, hi, samples, guard, seed, &batch);
        worst = std::max(worst, rep.mean_abs_error());
        worst = std::max(worst, rep.pair_abs_error());
      }
    }
  }
  r.statistic = worst;
  r.pass = worst <= r.threshold;
  return finish(r, start);
}

// 10. Tracy-Widom pipeline: determinant stability and the rescaled
// passage laws of both coupled environments
inline CheckResult check_tracy_widom_pipeline(Suite suite, int workers) {
  auto start = Clock::now();
  CheckResult r{"tracy_widom_pipeline", 0, 0.1, false, 0, ""};
  double worst_stab = 0;
  for (double s : {-4.0, -2.0, 0.0, 2.0}) {
    FredholmConfig c40, c80;
    c40.order = 40;
    c80.order = 80;
    worst_stab = std::max(worst_stab,
                          std::abs(tracy_widom_cdf(s, c40) - tracy_widom_cdf(s, c80)));
  }
  TwTable table = tracy_widom_table(-6.0, 4.0, 0.05);
  const int n = 200;
  const std::int64_t reps = suite == Suite::Full ? 10000 : 1000;
  ScalingParams geo = scaling_params(ModelTag::GeometricLPP, n, 1.0, n);
  auto geo_vals = parallel_map_replicas<double>(
      reps,
      [&](std::int64_t rep) {
        WeightGrid g = sample_weight_grid(EnvKind::geometric(1.0), n, n, 424242,
                                          static_cast<std::uint64_t>(rep));
        PassageProfile p = passage_profile_rsk(g, 1, {n});
        return (p.value(1, 0) - geo.g) / geo.chi;
      },
      workers);
  ScalingParams expo = scaling_params(ModelTag::ExponentialLPP, n, 1.0, n);
  auto exp_vals = parallel_map_replicas<double>(
      reps,
      [&](std::int64_t rep) {
        auto [g, e] =
            sample_coupled_grids(1e-3, n, n, 515151, static_cast<std::uint64_t>(rep));
        PassageProfile p = passage_profile_rsk(e, 1, {n});
        return (p.value(1, 0) - expo.g) / expo.chi;
      },
      workers);
  double ks_geo =
      empirical_compare(EmpiricalLaw::from_samples(geo_vals), [&](double x) { return table(x); })
          .ks;
  double ks_exp =
      empirical_compare(EmpiricalLaw::from_samples(exp_vals), [&](double x) { return table(x); })
          .ks;
  r.statistic = std::max(ks_geo, ks_exp);
  std::ostringstream d;
  d << "order_stability=" << worst_stab << " ks_geometric=" << ks_geo
    << " ks_exponential=" << ks_exp;
  r.detail = d.str();
  r.pass = worst_stab <= 1e-6 && r.statistic <= r.threshold;
  return finish(r, start);
}

// 11. derived environments: coupling bound, planar stabilization,
// SJ recursion vs brute force on every binary grid up to 4x4
inline CheckResult check_derived_environments(Suite suite, int) {
  auto start = Clock::now();
  CheckResult r{"derived_environments", 0, 0, false, 0, ""};
  std::int64_t violations = 0;
  for (double beta : {1e-3, 0.3, 1.0}) {
    auto [geo, expo] = sample_coupled_grids(beta, 100, 100, 606060);
    for (std::size_t i = 0; i < geo.weights.size(); ++i) {
      double bg = beta * geo.weights[i], e = expo.weights[i];
      if (std::abs(bg - e) > beta * (1.0 + e) + 1e-12) ++violations;
      if (e > beta * (geo.weights[i] + 1.0) + 1e-12) ++violations;
    }
  }
  int fields = suite == Suite::Full ? 100 : 20;
  for (int f = 0; f < fields; ++f) {
    PointField field = sample_point_field(EnvKind::poisson_plane(), {0, 4, 0, 1}, 707070,
                                          static_cast<std::uint64_t>(f));
    PassageProfile a = passage_planar(field, 2, {4.0}, 1);
    PassageProfile b = passage_planar(field, 2, {4.0}, 2);
    for (int k = 1; k <= 2; ++k)
      if (a.value(k, 0) != b.value(k, 0)) ++violations;
  }
  int max_side = suite == Suite::Full ? 4 : 3;
  for (int n = 1; n <= max_side; ++n)
    for (int m = 1; m <= max_side; ++m) {
      int cells = n * m;
      for (std::int64_t mask = 0; mask < (1ll << cells); ++mask) {
        WeightGrid g;
        g.n_cols = m;
        g.n_rows = n;
        g.env = EnvKind::bernoulli_sj(1.0);
        g.weights.resize(static_cast<std::size_t>(cells));
        for (int i = 0; i < cells; ++i)
          g.weights[static_cast<std::size_t>(i)] = static_cast<double>((mask >> i) & 1);
        auto L = sj_passage_values(g, n);
        for (int k = 1; k <= n; ++k)
          for (int mm = 1; mm <= m; ++mm)
            if (L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mm)] !=
                sj_bruteforce(g, k, mm))
              ++violations;
      }
    }
  r.statistic = static_cast<double>(violations);
  r.pass = violations == 0;
  return finish(r, start);
}

}  // namespace verify_detail

inline std::vector<CheckResult> run_acceptance(Suite suite, int workers = 0,
                                               std::ostream* progress = nullptr) {
  using Fn = std::function<CheckResult(Suite, int)>;
  std::vector<Fn> checks = {
      verify_detail::check_oracle_equivalence,    verify_detail::check_distributional_identity,
      verify_detail::check_shear_correspondence,  verify_detail::check_scaling_systems,
      verify_detail::check_critical_point,        verify_detail::check_contours,
      verify_detail::check_airy_kernel,           verify_detail::check_kernel_trend,
      verify_detail::check_determinantal_intensity,
      verify_detail::check_tracy_widom_pipeline,  verify_detail::check_derived_environments,
  };
  std::vector<CheckResult> results;
  for (auto& fn : checks) {
    CheckResult r = fn(suite, workers);
    if (progress)
      (*progress) << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                  << "  statistic=" << r.statistic << " threshold=" << r.threshold << "  ("
                  << r.seconds << " s)" << (r.detail.empty() ? "" : "  [" + r.detail + "]")
                  << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace airylab
