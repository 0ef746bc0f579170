#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "airylab/common.hpp"
#include "airylab/env.hpp"
#include "airylab/lpp.hpp"
#include "airylab/scaling.hpp"
#include "airylab/walks.hpp"

namespace airylab {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Grid CSV: metadata header row, the metadata row, then one grid row per
// line (bottom row first).
inline std::string grid_to_csv(const WeightGrid& g) {
  std::ostringstream os;
  os << "env,beta,n_rows,n_cols,seed\n";
  os << g.env.name() << ',' << fmt_double(g.env.beta) << ',' << g.n_rows << ',' << g.n_cols
     << ',' << g.seed << '\n';
  for (int row = 1; row <= g.n_rows; ++row) {
    for (int col = 1; col <= g.n_cols; ++col) {
      if (col > 1) os << ',';
      os << fmt_double(g(col, row));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string grid_to_json(const WeightGrid& g) {
  std::ostringstream os;
  os << "{\"env\":\"" << g.env.name() << "\",\"beta\":" << fmt_double(g.env.beta)
     << ",\"n_rows\":" << g.n_rows << ",\"n_cols\":" << g.n_cols << ",\"seed\":" << g.seed
     << ",\"weights\":[";
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    if (i) os << ',';
    os << fmt_double(g.weights[i]);
  }
  os << "]}";
  return os.str();
}

// Profile CSV: JSON header block as a comment line, then (k, m_or_t, value).
inline std::string profile_to_csv(const PassageProfile& p, const std::string& env_name,
                                  std::uint64_t seed) {
  std::ostringstream os;
  os << "# {\"n\":" << p.n << ",\"k_max\":" << p.k_max << ",\"env\":\"" << env_name
     << "\",\"seed\":" << seed << "}\n";
  os << "k,m,value\n";
  for (int k = 1; k <= p.k_max; ++k)
    for (std::size_t mi = 0; mi < p.m_values.size(); ++mi)
      os << k << ',' << fmt_double(p.m_values[mi]) << ',' << fmt_double(p.value(k, mi)) << '\n';
  return os.str();
}

inline std::string walk_model_name(WalkModel m) {
  switch (m) {
    case WalkModel::GeometricNI: return "geometric_ni";
    case WalkModel::BernoulliNI: return "bernoulli_ni";
    case WalkModel::SJWalks: return "sj_walks";
    case WalkModel::Rescaled: return "rescaled";
  }
  return "?";
}

// Ensemble CSV: JSON header block, then (time, walk_index, value).
inline std::string ensemble_to_csv(const WalkEnsemble& e) {
  std::ostringstream os;
  os << "# {\"model\":\"" << walk_model_name(e.model) << "\",\"n\":" << e.n
     << ",\"beta\":" << fmt_double(e.beta) << ",\"horizon\":" << e.horizon
     << ",\"seed\":" << e.seed << "}\n";
  os << "time,walk_index,value\n";
  for (int t = 0; t <= e.horizon; ++t)
    for (int i = 1; i <= e.n; ++i)
      os << t << ',' << i << ',' << fmt_double(e.value(i, t)) << '\n';
  return os.str();
}

inline std::string rescaled_to_csv(const RescaledLines& r) {
  std::ostringstream os;
  os << "t,line_index,value\n";
  for (std::size_t ti = 0; ti < r.t_mesh.size(); ++ti)
    for (std::size_t k = 0; k < r.lines.size(); ++k)
      os << fmt_double(r.t_mesh[ti]) << ',' << (k + 1) << ',' << fmt_double(r.lines[k][ti])
         << '\n';
  return os.str();
}

inline std::string scaling_to_json(const ScalingParams& p) {
  std::ostringstream os;
  os << "{\"model\":\"" << model_name(p.model) << "\",\"n\":" << fmt_double(p.n)
     << ",\"beta\":" << fmt_double(p.beta) << ",\"m_ref\":" << fmt_double(p.m_ref)
     << ",\"g\":" << fmt_double(p.g) << ",\"g1\":" << fmt_double(p.g1)
     << ",\"g2\":" << fmt_double(p.g2) << ",\"tau\":" << fmt_double(p.tau)
     << ",\"chi\":" << fmt_double(p.chi);
  if (p.has_damping())
    os << ",\"delta\":" << fmt_double(p.delta) << ",\"rho\":" << fmt_double(p.rho);
  os << ",\"h\":{\"g\":" << fmt_double(p.g) << ",\"g1\":" << fmt_double(p.g1)
     << ",\"m_ref\":" << fmt_double(p.m_ref) << "}}";
  return os.str();
}

// Arctic curve tabulation for plot overlays: columns (m, g, g1, g2).
inline std::string arctic_to_csv(ModelTag model, double n, double beta,
                                 const std::vector<double>& mesh) {
  std::ostringstream os;
  os << "m,g,g1,g2\n";
  for (double m : mesh) {
    CurveValue c = arctic_curve(model, n, beta, m);
    os << fmt_double(m) << ',' << fmt_double(c.g) << ',' << fmt_double(c.d1) << ','
       << fmt_double(c.d2) << '\n';
  }
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw argument_error("cannot open output file: " + path);
  f << content;
}

// Contour polyline as CSV rows (t, re, im) over [-t_max, t_max].
template <typename Path>
std::string contour_to_csv(const Path& c, double t_max, int samples = 400) {
  std::ostringstream os;
  os << "t,re,im\n";
  for (int i = -samples; i <= samples; ++i) {
    double t = t_max * i / samples;
    auto z = c.at(t);
    os << fmt_double(t) << ',' << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << '\n';
  }
  return os.str();
}

}  // namespace airylab
