#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/kernels.hpp"
#include "airylab/walks.hpp"

namespace airylab {

// Sorted sample with metadata, the input to goodness-of-fit comparisons.
struct EmpiricalLaw {
  std::vector<double> sorted;

  static EmpiricalLaw from_samples(std::vector<double> xs) {
    require(!xs.empty(), "empty sample");
    for (double x : xs) require(std::isfinite(x), "sample contains non-finite values");
    std::sort(xs.begin(), xs.end());
    EmpiricalLaw law;
    law.sorted = std::move(xs);
    return law;
  }
};

struct GofResult {
  double ks = 0;   // Kolmogorov-Smirnov sup distance
  double cvm = 0;  // Cramer-von Mises statistic
};

inline GofResult empirical_compare(const EmpiricalLaw& law,
                                   const std::function<double(double)>& reference_cdf) {
  require(law.sorted.size() >= 100, "need at least 100 samples");
  const double n = static_cast<double>(law.sorted.size());
  double ks = 0, cvm = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < law.sorted.size(); ++i) {
    double F = reference_cdf(law.sorted[i]);
    require(F >= -1e-9 && F <= 1.0 + 1e-9, "reference CDF out of [0,1]");
    double di = static_cast<double>(i);
    ks = std::max({ks, (di + 1.0) / n - F, F - di / n});
    double u = (2.0 * di + 1.0) / (2.0 * n);
    cvm += (F - u) * (F - u);
  }
  return {ks, cvm};
}

// Discrete law over integer-encoded atoms.
struct DiscreteLaw {
  std::map<std::int64_t, double> pmf;

  static DiscreteLaw from_counts(const std::map<std::int64_t, std::int64_t>& counts) {
    DiscreteLaw law;
    double total = 0;
    for (const auto& [k, c] : counts) total += static_cast<double>(c);
    require(total > 0, "empty counts");
    for (const auto& [k, c] : counts) law.pmf[k] = static_cast<double>(c) / total;
    return law;
  }
};

inline double tv_distance(const DiscreteLaw& a, const DiscreteLaw& b) {
  double s = 0;
  auto ia = a.pmf.begin();
  auto ib = b.pmf.begin();
  while (ia != a.pmf.end() || ib != b.pmf.end()) {
    if (ib == b.pmf.end() || (ia != a.pmf.end() && ia->first < ib->first)) {
      s += ia->second;
      ++ia;
    } else if (ia == a.pmf.end() || ib->first < ia->first) {
      s += ib->second;
      ++ib;
    } else {
      s += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * s;
}

// Chi-square upper tail by the regularized incomplete gamma function
// (series / continued fraction), enough for goodness-of-fit p-values.
namespace detail {
inline double gammainc_upper_reg(double a, double x) {
  if (x <= 0) return 1.0;
  if (x < a + 1.0) {
    // lower series
    double sum = 1.0 / a, term = sum;
    for (int k = 1; k < 500; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    double lower = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - lower;
  }
  // upper continued fraction (Lentz)
  double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}
}  // namespace detail

// Pearson chi-square test of integer samples against an exact pmf;
// bins with expected count < 5 are pooled into the tail.
inline double chi_square_pvalue(const std::map<std::int64_t, std::int64_t>& counts,
                                std::int64_t n_samples,
                                const std::function<double(std::int64_t)>& pmf,
                                std::int64_t support_max) {
  std::vector<double> expected, observed;
  double tail_e = 0, tail_o = 0;
  for (std::int64_t k = 0; k <= support_max; ++k) {
    double e = pmf(k) * static_cast<double>(n_samples);
    auto it = counts.find(k);
    double o = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    if (e < 5.0) {
      tail_e += e;
      tail_o += o;
    } else {
      expected.push_back(e);
      observed.push_back(o);
    }
  }
  double rest = static_cast<double>(n_samples);
  for (double e : expected) rest -= e;
  tail_e = std::max(tail_e, rest);  // all remaining mass beyond support_max
  for (const auto& [k, c] : counts)
    if (k > support_max) tail_o += static_cast<double>(c);
  if (tail_e > 0) {
    expected.push_back(tail_e);
    observed.push_back(tail_o);
  }
  double chi2 = 0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  double dof = static_cast<double>(expected.size()) - 1.0;
  return detail::gammainc_upper_reg(0.5 * dof, 0.5 * chi2);
}

// ---------------------------------------------------------------------------
// Determinantal intensity check: Monte Carlo counts of rejection-sampled
// Bernoulli walks against kernel diagonal sums, plus the two-point
// factorial moment against 2x2 determinants.
struct IntensityReport {
  double mc_mean = 0;
  double kernel_mean = 0;
  double mc_pair = 0;
  double kernel_pair = 0;
  double mean_abs_error() const { return std::abs(mc_mean - kernel_mean); }
  double pair_abs_error() const { return std::abs(mc_pair - kernel_pair); }
};

// region = inclusive height window [x_lo, x_hi] at a fixed time.
inline IntensityReport counting_intensity_check(int n, double beta, int time, std::int64_t x_lo,
                                                std::int64_t x_hi, std::int64_t samples,
                                                int guard_horizon, std::uint64_t seed,
                                                const std::vector<WalkEnsemble>* presampled = nullptr) {
  require(n >= 1 && n <= 3, "exact sampler available for n <= 3");
  require(guard_horizon >= time + 1, "guard horizon too small for the requested time");
  IntensityReport rep;
  double acc = 0, acc2 = 0;
  for (std::int64_t r = 0; r < samples; ++r) {
    const WalkEnsemble& e = presampled
                                ? (*presampled)[static_cast<std::size_t>(r)]
                                : sample_ni_bernoulli_rejection(n, beta, time, guard_horizon,
                                                                seed, static_cast<std::uint64_t>(r));
    int cnt = 0;
    for (int i = 1; i <= n; ++i) {
      double v = e.value(i, time);
      if (v >= static_cast<double>(x_lo) && v <= static_cast<double>(x_hi)) ++cnt;
    }
    acc += cnt;
    acc2 += cnt * (cnt - 1);
  }
  rep.mc_mean = acc / static_cast<double>(samples);
  rep.mc_pair = acc2 / static_cast<double>(samples);
  // kernel side
  std::vector<double> diag;
  std::vector<std::int64_t> xs;
  for (std::int64_t x = x_lo; x <= x_hi; ++x) xs.push_back(x);
  QuadConfig quad;
  quad.check_refinement = false;
  std::vector<std::vector<double>> K(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      KernelQuery q;
      q.xn = xs[i];
      q.sn = time;
      q.yn = xs[j];
      q.tn = time;
      K[i][j] = prelimit_kernel(n, beta, q, quad).value;
    }
  double mean = 0, pair = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mean += K[i][i];
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      pair += K[i][i] * K[j][j] - K[i][j] * K[j][i];
    }
  rep.kernel_mean = mean;
  rep.kernel_pair = pair;
  return rep;
}

}  // namespace airylab
