#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "airylab/contours.hpp"
#include "airylab/kernels.hpp"
#include "airylab/scaling.hpp"
#include "airylab/symbols.hpp"

using namespace airylab;

namespace {
// feasible (alpha, beta) grid with extreme aspect ratios
std::vector<std::pair<double, double>> feasible_grid() {
  std::vector<std::pair<double, double>> out;
  for (double alpha : {1.1, 3.0, 10.0, 100.0, 1e3, 1e4})
    for (double beta : {1e-2, 0.1, 0.5, 1.0, 10.0, 100.0})
      if (alpha * beta > 1.05) out.emplace_back(alpha, beta);
  return out;
}
}  // namespace

TEST_CASE("critical point and pointwise symbol identity") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    REQUIRE(std::abs(sym.L1(complex(sym.delta, 0))) <= 1e-10);
    REQUIRE(std::abs(sym.L2(complex(sym.delta, 0))) <= 1e-8 * std::max(1.0, alpha / sym.delta));
    // n L(w) + s log beta reproduces log F(gamma_n, m_n; w) at random w
    double n = 25, m = alpha * n;
    double gamma_n = n * sym.gamma_tilde;
    complex w(0.3, 0.2);
    complex lhs = n * sym.L(w) + m * std::log(beta);
    complex rhs = sym.logF(gamma_n, m, w);
    REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
  }
}

TEST_CASE("Taylor identities for the scaling parameters") {
  for (auto [alpha, beta] : feasible_grid()) {
    double n = 60;
    ScalingParams p = scaling_params(ModelTag::BernoulliWalks, n, beta, alpha * n);
    SymbolFns sym(n, beta, alpha);
    complex d(sym.delta, 0.0);
    double rho = p.rho;
    REQUIRE(std::abs(-2.0 * rho * rho * rho / sym.L3(d).real() - n) <= 1e-10 * n);
    REQUIRE(std::abs(2.0 * rho * rho / sym.Lt2(d).real() - p.tau) <= 1e-10 * p.tau);
    REQUIRE(std::abs(rho / sym.Lx1(d).real() - p.chi) <= 1e-10 * p.chi);
  }
}

TEST_CASE("w contour structure") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    double eta = sym.delta / 20.0;
    ContourPath c = build_contour_w(sym, eta);
    REQUIRE(c.at(0.0) == complex(sym.delta - eta, 0.0));
    complex t0 = c.tangent_at(1e-12);
    REQUIRE(std::abs(t0 - std::polar(1.0, 2 * pi / 3)) < 1e-9);
    // conjugate symmetry
    for (double t : {0.3 * c.t_end, 0.7 * c.t_end})
      REQUIRE(std::abs(c.at(-t) - std::conj(c.at(t))) < 1e-14);
    // terminal point on the negative real axis
    complex endp = c.at(c.t_end);
    REQUIRE(endp.real() < 0.0);
    REQUIRE(std::abs(endp.imag()) < 1e-12);
    // containment in the closed disk of radius delta - eta
    for (int i = 0; i <= 300; ++i) {
      complex z = c.at(c.t_end * i / 300.0);
      REQUIRE(std::abs(z) <= sym.delta - eta + 1e-12);
      REQUIRE(std::abs(z) >= 0.05 * sym.delta);
    }
  }
}

TEST_CASE("z contour structure") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    double eta = std::min(sym.delta, 1 - sym.delta) / 20.0;
    ContourPath c = build_contour_z(sym, eta);
    REQUIRE(c.at(0.0) == complex(sym.delta + eta, 0.0));
    complex t0 = c.tangent_at(1e-12);
    REQUIRE(std::abs(t0 - std::polar(1.0, 4 * pi / 9)) < 1e-9);
    double tmax = std::isfinite(c.t_end) ? c.t_end : truncate_by_descent(sym, c, 80.0);
    for (double t : {0.3 * tmax, 0.9 * tmax})
      REQUIRE(std::abs(c.at(-t) - std::conj(c.at(t))) < 1e-12 * std::abs(c.at(t)));
    if (c.kind == ContourKind::ZCase1) {
      complex endp = c.at(c.t_end);
      REQUIRE(endp.real() > 1.0);
      REQUIRE(std::abs(endp.imag()) < 1e-9);
    }
    // containment outside the disk of radius delta + eta
    for (int i = 1; i <= 300; ++i) {
      complex z = c.at(tmax * i / 300.0);
      REQUIRE(std::abs(z) >= sym.delta + eta - 1e-10);
    }
  }
}

TEST_CASE("Re L descends along the w contour and ascends along z beyond 2 eta") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    double eta_w = sym.delta / 20.0;
    ContourPath cw = build_contour_w(sym, eta_w);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      double t = 2 * eta_w + (cw.t_end - 2 * eta_w) * i / 1000.0;
      double re = sym.L(cw.at(t)).real();
      REQUIRE(re <= prev + 1e-10 * (1.0 + std::abs(re)));
      prev = std::min(prev, re);
    }
    double eta_z = std::min(sym.delta, 1 - sym.delta) / 20.0;
    ContourPath cz = build_contour_z(sym, eta_z);
    double tmax = std::isfinite(cz.t_end) ? cz.t_end : truncate_by_descent(sym, cz, 80.0);
    prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      double t = 2 * eta_z + (tmax - 2 * eta_z) * i / 1000.0;
      double re = sym.L(cz.at(t)).real();
      REQUIRE(re >= prev - 1e-10 * (1.0 + std::abs(re)));
      prev = std::max(prev, re);
    }
  }
}

TEST_CASE("peak excess over Re L(delta) scales like eta^3") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    auto excess = [&](double eta) {
      ContourPath c = build_contour_w(sym, eta);
      double peak = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 2000; ++i)
        peak = std::max(peak, sym.L(c.at(c.t_end * i / 2000.0)).real());
      return peak - sym.L(complex(sym.delta, 0)).real();
    };
    double e1 = excess(sym.delta / 20.0);
    double e2 = excess(sym.delta / 40.0);
    REQUIRE(e1 >= 0.0);
    if (e1 > 1e-9 * std::abs(sym.L(complex(sym.delta, 0)).real())) {
      REQUIRE(e2 <= 0.22 * e1);  // cubic scaling gives 1/8
    }
  }
}

TEST_CASE("theta choice keeps the w contour away from the pole at -1/beta") {
  for (auto [alpha, beta] : feasible_grid()) {
    SymbolFns sym(25, beta, alpha);
    ContourPath c = build_contour_w(sym, sym.delta / 20.0);
    double mind = 1e100;
    for (int i = 0; i <= 2000; ++i)
      mind = std::min(mind, std::abs(c.at(c.t_end * i / 2000.0) + 1.0 / beta));
    REQUIRE(mind >= 0.02 * sym.delta);
  }
}

TEST_CASE("eta guard") {
  SymbolFns sym(25, 1.0, 4.0);
  REQUIRE_THROWS_AS(build_contour_w(sym, sym.delta), argument_error);
  REQUIRE_THROWS_AS(build_contour_z(sym, 0.5), argument_error);
}

TEST_CASE("z contour case 2: turn onto the 5 pi / 9 ray") {
  // large odds with small damping parameter trigger the unbounded branch
  SymbolFns sym(25, 100.0, std::pow(10.0, 0.5) / 100.0);
  double eta = std::min(sym.delta, 1 - sym.delta) / 20.0;
  ContourPath c = build_contour_z(sym, eta);
  REQUIRE(c.kind == ContourKind::ZCase2);
  REQUIRE(c.pieces.size() == 2);
  REQUIRE(c.unbounded);
  complex dir = c.pieces[1].direction;
  REQUIRE(std::abs(dir - std::polar(1.0, 5 * pi / 9)) < 1e-12);
  // ascent of Re L beyond 2 eta holds across the junction
  double tmax = truncate_by_descent(sym, c, 80.0);
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    double t = 2 * eta + (tmax - 2 * eta) * i / 1000.0;
    complex z = c.at(t);
    REQUIRE(std::abs(z) >= sym.delta + eta - 1e-12);
    double re = sym.L(z).real();
    REQUIRE(re >= prev - 1e-10 * (1 + std::abs(re)));
    prev = std::max(prev, re);
  }
}
