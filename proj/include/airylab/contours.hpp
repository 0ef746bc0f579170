#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "airylab/common.hpp"
#include "airylab/quadrature.hpp"
#include "airylab/symbols.hpp"

namespace airylab {

enum class ContourKind { W, ZCase1, ZCase2, AiryU, AiryV };

// Piecewise contour in the upper half plane, parametrized by arc length
// for t >= 0 and extended to negative t by conjugation. Pieces are line
// segments and circular arcs.
struct ContourPiece {
  bool is_arc = false;
  complex start;      // segment start
  complex direction;  // unit direction (segment)
  complex center;     // arc center
  double radius = 0;
  double angle0 = 0;       // arc start angle
  double angle_sign = 1;   // +1 counterclockwise, -1 clockwise
  double length = 0;       // arc length of the piece

  complex at(double s) const {
    if (!is_arc) return start + s * direction;
    double phi = angle0 + angle_sign * s / radius;
    return center + radius * complex(std::cos(phi), std::sin(phi));
  }
  complex tangent(double s) const {
    if (!is_arc) return direction;
    double phi = angle0 + angle_sign * s / radius;
    return angle_sign * complex(-std::sin(phi), std::cos(phi));
  }
};

struct ContourPath {
  ContourKind kind = ContourKind::W;
  double eta = 0;
  std::vector<ContourPiece> pieces;  // t >= 0 half
  double t_end = 0;                  // total half-length (finite part)
  bool unbounded = false;            // last piece extends to infinity
  double theta = 0;                  // chosen ray angle (W contour)

  complex at(double t) const {
    // conjugate symmetry: path(-t) = conj(path(t))
    if (t < 0) return std::conj(at(-t));
    for (const auto& p : pieces) {
      if (t <= p.length || (&p == &pieces.back() && unbounded)) return p.at(t);
      t -= p.length;
    }
    return pieces.back().at(pieces.back().length);
  }
  complex tangent_at(double t) const {
    if (t < 0) return std::conj(tangent_at(-t));
    for (const auto& p : pieces) {
      if (t <= p.length || (&p == &pieces.back() && unbounded)) return p.tangent(t);
      t -= p.length;
    }
    return pieces.back().tangent(pieces.back().length);
  }
};

// Descent contour for the w integral: a segment from delta - eta in
// direction e^{2 pi i / 3} until the ray arg = theta, then a circular arc
// about the origin down to the negative real axis. theta is picked from
// {pi/6, pi/5} to maximize the least distance to the pole at -1/beta.
inline ContourPath build_contour_w(const SymbolFns& sym, double eta) {
  const double d = sym.delta;
  require(eta > 0 && eta <= d / 20.0 + 1e-15, "eta must satisfy eta <= delta / 20");
  double best_dist = -1.0;
  ContourPath best;
  for (double theta : {pi / 6.0, pi / 5.0}) {
    double tan_t = std::tan(theta);
    double t0 = 2.0 * tan_t * (d - eta) / (std::sqrt(3.0) + tan_t);
    complex dir(std::cos(2.0 * pi / 3.0), std::sin(2.0 * pi / 3.0));
    complex p0 = (d - eta) + t0 * dir;
    double r = std::abs(p0);
    ContourPath c;
    c.kind = ContourKind::W;
    c.eta = eta;
    c.theta = theta;
    ContourPiece seg;
    seg.start = complex(d - eta, 0.0);
    seg.direction = dir;
    seg.length = t0;
    ContourPiece arc;
    arc.is_arc = true;
    arc.center = 0.0;
    arc.radius = r;
    arc.angle0 = theta;
    arc.angle_sign = +1.0;  // counterclockwise toward the negative axis
    arc.length = r * (pi - theta);
    c.pieces = {seg, arc};
    c.t_end = t0 + arc.length;
    // least distance to -1/beta: over the segment and over the arc (whose
    // closest point is on the negative real axis at radius r)
    complex q(-1.0 / sym.beta, 0.0);
    complex ab = p0 - seg.start;
    double tt = std::max(0.0, std::min(1.0, ((q - seg.start) * std::conj(ab)).real() /
                                                std::norm(ab)));
    double dist = std::min(std::abs(seg.start + tt * ab - q), std::abs(1.0 / sym.beta - r));
    if (dist > best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

// Ascent contour for the z integral: a segment from delta + eta in
// direction e^{4 pi i / 9} until the angle between the steepest-ascent
// direction and the path leaves (-4pi/9, 4pi/9); then either a clockwise
// circle about 1 (case 1, finite, ending on (1, infty)) or a ray at
// angle 5 pi / 9 (case 2, unbounded).
inline ContourPath build_contour_z(const SymbolFns& sym, double eta) {
  const double d = sym.delta;
  require(eta > 0 && eta <= std::min(d, 1.0 - d) / 20.0 + 1e-15,
          "eta must satisfy eta <= min(delta, 1-delta) / 20");
  const complex dir(std::cos(4.0 * pi / 9.0), std::sin(4.0 * pi / 9.0));
  auto point = [&](double t) { return complex(d + eta, 0.0) + t * dir; };
  auto mismatch = [&](double t) {
    // -Arg L' minus the path direction 4pi/9
    return -sym.arg_L1(point(t)) - 4.0 * pi / 9.0;
  };
  // first time the segment direction to delta reaches angle 7pi/18
  double tan70 = std::tan(7.0 * pi / 18.0);
  double t_min = eta * tan70 / (std::sin(4.0 * pi / 9.0) - tan70 * std::cos(4.0 * pi / 9.0));
  const double window = 4.0 * pi / 9.0;
  const double t_cap = 4000.0 * std::max({d, 1.0 - d, 1.0 / sym.beta, 1.0});

  std::optional<double> t0;
  double t = t_min;
  double prev = mismatch(t);
  if (std::abs(prev) >= window) t0 = t;
  while (!t0 && t < t_cap) {
    double t2 = t * 1.02 + 1e-14;
    double cur = mismatch(t2);
    if (std::abs(cur) >= window) {
      double lo = t, hi = t2;
      for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (std::abs(mismatch(mid)) >= window ? hi : lo) = mid;
      }
      t0 = hi;
    }
    t = t2;
    prev = cur;
  }

  ContourPath c;
  c.eta = eta;
  ContourPiece seg;
  seg.start = complex(d + eta, 0.0);
  seg.direction = dir;
  if (!t0) {
    // never leaves the ascent window: single unbounded ray
    c.kind = ContourKind::ZCase2;
    seg.length = std::numeric_limits<double>::infinity();
    c.pieces = {seg};
    c.t_end = std::numeric_limits<double>::infinity();
    c.unbounded = true;
    return c;
  }
  seg.length = *t0;
  complex w0 = point(*t0);
  if (mismatch(*t0) <= -window + 1e-12) {
    // case 1: clockwise circle about 1 until the real axis
    double r1 = std::abs(w0 - 1.0);
    double phi0 = std::arg(w0 - 1.0);
    ContourPiece arc;
    arc.is_arc = true;
    arc.center = 1.0;
    arc.radius = r1;
    arc.angle0 = phi0;
    arc.angle_sign = -1.0;
    arc.length = r1 * phi0;
    c.kind = ContourKind::ZCase1;
    c.pieces = {seg, arc};
    c.t_end = seg.length + arc.length;
  } else {
    // case 2: ray at 5pi/9 to infinity
    ContourPiece ray;
    ray.start = w0;
    ray.direction = complex(std::cos(5.0 * pi / 9.0), std::sin(5.0 * pi / 9.0));
    ray.length = std::numeric_limits<double>::infinity();
    c.kind = ContourKind::ZCase2;
    c.pieces = {seg, ray};
    c.t_end = std::numeric_limits<double>::infinity();
    c.unbounded = true;
  }
  return c;
}

// Arc length at which exp(n L) has fallen below `drop` nats of its value
// at the contour start; truncation point for unbounded z contours.
inline double truncate_by_descent(const SymbolFns& sym, const ContourPath& c, double drop = 60.0) {
  double base = sym.n * sym.L(c.at(0.0)).real();
  double t = 10.0 * c.eta;
  for (int i = 0; i < 400; ++i) {
    if (std::isfinite(c.t_end) && t >= c.t_end) return c.t_end;
    if (std::abs(sym.n * sym.L(c.at(t)).real() - base) >= drop) return t;
    t *= 1.4;
  }
  return t;
}

// Quadrature nodes along the full conjugate-symmetric contour. Returns
// node positions z_i and complex weights w_i (including direction and
// orientation), ordered from -t_max to +t_max.
struct ContourQuad {
  std::vector<complex> z;
  std::vector<complex> w;
};

inline ContourQuad contour_quadrature(const ContourPath& c, double t_max, double fine, int deg) {
  std::vector<double> edges = geometric_edges(t_max, fine);
  // panel boundaries must include piece junctions: the integrand has a
  // direction kink there and Gauss-Legendre needs analyticity per panel
  double acc = 0;
  for (const auto& p : c.pieces) {
    acc += p.length;
    if (std::isfinite(acc) && acc > 0 && acc < t_max) edges.push_back(acc);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-15; }),
              edges.end());
  PanelQuad q = panel_quadrature(edges, deg);
  ContourQuad out;
  std::size_t m = q.t.size();
  out.z.resize(2 * m);
  out.w.resize(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    complex z = c.at(q.t[i]);
    complex dz = c.tangent_at(q.t[i]) * q.w[i];
    out.z[m + i] = z;
    out.w[m + i] = dz;
    out.z[m - 1 - i] = std::conj(z);
    out.w[m - 1 - i] = -std::conj(dz);  // lower half traversed toward the start
  }
  return out;
}

// The Airy integrand contours: rays through +apex at angles +-pi/3 (u)
// and through -apex at angles +-2pi/3 (v).
inline ContourPath build_contour_airy(bool u_side, double apex, double t_max) {
  ContourPath c;
  c.kind = u_side ? ContourKind::AiryU : ContourKind::AiryV;
  c.eta = apex;
  ContourPiece ray;
  ray.start = complex(u_side ? apex : -apex, 0.0);
  double ang = u_side ? pi / 3.0 : 2.0 * pi / 3.0;
  ray.direction = complex(std::cos(ang), std::sin(ang));
  ray.length = t_max;
  c.pieces = {ray};
  c.t_end = t_max;
  return c;
}

}  // namespace airylab
