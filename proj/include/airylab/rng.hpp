#pragma once

#include <cmath>
#include <cstdint>

#include "airylab/common.hpp"

namespace airylab {

// Counter-based generator: every output is a pure function of
// (key, counter), so replicas and grid entries can be split into
// independent streams without sharing any mutable state.
//
// mix64 is the SplitMix64 finalizer; two chained rounds keyed by the
// stream give well-decorrelated 64-bit words for Monte Carlo use.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix2(std::uint64_t key, std::uint64_t ctr) {
  return mix64(mix64(key ^ 0x6a09e667f3bcc909ull) + ctr);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  // Stream splitting: child streams are keyed by (key, id) and never
  // collide with the parent's own counter sequence.
  RngStream substream(std::uint64_t id) const {
    return RngStream(mix2(key_ ^ 0x5851f42d4c957f2dull, id));
  }

  std::uint64_t next_u64() { return mix2(key_, ctr_++); }

  // Uniform on the open interval (0,1); never returns 0 or 1, so logs
  // and inverse CDFs are safe.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_exponential() { return -std::log(next_uniform()); }

  // Geometric of odds beta (P(k) = beta (1+beta)^{-1-k}, mean 1/beta) and
  // the exponential it couples to, both driven by one shared uniform.
  // G = floor(E / log(1+beta)) inverts the geometric CDF exactly.
  struct CoupledGE {
    std::int64_t g;
    double e;
  };
  CoupledGE next_coupled_geom_exp(double beta) {
    require(beta > 0, "beta must be positive");
    double e = next_exponential();
    double g = std::floor(e / std::log1p(beta));
    return {static_cast<std::int64_t>(g), e};
  }

  std::int64_t next_geometric(double beta) { return next_coupled_geom_exp(beta).g; }

  bool next_bernoulli(double beta) {
    require(beta > 0, "beta must be positive");
    return next_uniform() < beta / (1.0 + beta);
  }

  double next_normal() {
    double u1 = next_uniform();
    double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

  // Poisson counts: sequential inversion below mean 30, Hormann's PTRS
  // transformed rejection above (table-free, exact over the full range).
  std::int64_t next_poisson(double mean) {
    require(mean >= 0, "Poisson mean must be nonnegative");
    if (mean == 0) return 0;
    if (mean < 30.0) return poisson_inversion(mean);
    return poisson_ptrs(mean);
  }

 private:
  std::int64_t poisson_inversion(double mean) {
    double u = next_uniform();
    double p = std::exp(-mean);
    double cum = p;
    std::int64_t k = 0;
    while (u > cum && k < 4000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
    }
    return k;
  }

  std::int64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      double u = next_uniform() - 0.5;
      double v = next_uniform();
      double us = 0.5 - std::abs(u);
      double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
      if (k < 0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
          k * loglam - mean - std::lgamma(k + 1.0)) {
        return static_cast<std::int64_t>(k);
      }
    }
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

// Canonical splitting layout used by the samplers: one stream per
// (master seed, replica, entry). Documented so that parallel replica
// loops reproduce serial output bit for bit.
inline RngStream entry_stream(std::uint64_t seed, std::uint64_t replica, std::uint64_t entry) {
  return RngStream(seed).substream(replica).substream(entry);
}

}  // namespace airylab
