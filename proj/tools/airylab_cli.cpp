// airylab: simulation and numerics for integrable last passage models,
// nonintersecting walk ensembles, their edge rescalings, the prelimit and
// Airy determinantal kernels, and Tracy-Widom statistics.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "airylab/fredholm.hpp"
#include "airylab/io.hpp"
#include "airylab/kernels.hpp"
#include "airylab/parallel.hpp"
#include "airylab/stats.hpp"
#include "airylab/verify.hpp"

using json = nlohmann::json;
using namespace airylab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct MeshSpec {
  double a = 0, b = 0, step = 1;
  std::vector<double> values() const {
    std::vector<double> v;
    for (double x = a; x <= b + 1e-12; x += step) v.push_back(x);
    return v;
  }
};

MeshSpec parse_mesh(const std::string& spec) {
  MeshSpec m;
  auto c1 = spec.find(':');
  auto c2 = spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw argument_error("mesh must be a:b:step");
  m.a = std::stod(spec.substr(0, c1));
  m.b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  m.step = std::stod(spec.substr(c2 + 1));
  if (m.step <= 0 || m.b < m.a) throw argument_error("mesh must satisfy a <= b, step > 0");
  return m;
}

ModelTag parse_model(const std::string& name) {
  if (name == "geometric") return ModelTag::GeometricLPP;
  if (name == "bernoulli") return ModelTag::BernoulliWalks;
  if (name == "exponential") return ModelTag::ExponentialLPP;
  if (name == "poisson_lines") return ModelTag::PoissonLines;
  if (name == "brownian") return ModelTag::BrownianLPP;
  if (name == "poisson_plane") return ModelTag::PoissonPlane;
  if (name == "sj") return ModelTag::SeppalainenJohansson;
  throw argument_error("unknown model: " + name);
}

void write_manifest(const std::string& out, const std::string& command, const json& config) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["version"] = kVersion;
  write_file(out + ".manifest.json", m.dump(2) + "\n");
}

// simulate: environment samples -> passage profiles -> rescaled top lines
int cmd_simulate(const std::string& model_name, int n, double beta, double m_ref, int k,
                 std::int64_t samples, std::uint64_t seed, MeshSpec mesh, int workers,
                 const std::string& out, const std::string& format) {
  ModelTag model = parse_model(model_name);
  require(samples >= 1, "samples must be positive");
  if (discrete_time_model(model))
    require(m_ref == std::floor(m_ref), "lattice models need an integer reference location");
  ScalingParams params = scaling_params(model, n, beta, m_ref);
  std::vector<double> t_mesh = mesh.values();
  std::vector<double> locations;
  for (double t : t_mesh) {
    double m = rescaled_location(params, t);
    require(m >= 0, "t mesh reaches negative locations");
    locations.push_back(m);
  }
  double max_loc = *std::max_element(locations.begin(), locations.end());
  std::vector<double> sorted_loc = locations;
  std::sort(sorted_loc.begin(), sorted_loc.end());
  auto make_profile = [&](std::int64_t rep) -> PassageProfile {
    std::uint64_t r = static_cast<std::uint64_t>(rep);
    switch (model) {
      case ModelTag::GeometricLPP: {
        std::vector<int> ms(sorted_loc.begin(), sorted_loc.end());
        WeightGrid g = sample_weight_grid(EnvKind::geometric(beta), n,
                                          static_cast<int>(max_loc), seed, r);
        return passage_profile_rsk(g, k, ms);
      }
      case ModelTag::ExponentialLPP: {
        std::vector<int> ms(sorted_loc.begin(), sorted_loc.end());
        auto [geo, expo] =
            sample_coupled_grids(1e-3, n, static_cast<int>(max_loc), seed, r);
        return passage_profile_rsk(expo, k, ms);
      }
      case ModelTag::PoissonLines: {
        PointField f = sample_point_field(EnvKind::poisson_lines(),
                                          {0, max_loc * 1.01 + 1, 0, static_cast<double>(n)},
                                          seed, r);
        return passage_profile_poisson_exact(f, n, k, sorted_loc);
      }
      case ModelTag::BrownianLPP: {
        double dt = max_loc / 2048.0;
        LineField f = sample_line_field(EnvKind::brownian_lines(), n, max_loc * 1.01 + dt,
                                        dt, seed, r);
        return passage_profile_continuous(f, k, sorted_loc);
      }
      case ModelTag::PoissonPlane: {
        PointField f = sample_point_field(EnvKind::poisson_plane(),
                                          {0, max_loc * 1.01 + 1, 0, 1}, seed, r);
        return passage_planar(f, k, sorted_loc);
      }
      default:
        throw argument_error(
            "simulate supports geometric|exponential|poisson_lines|brownian|poisson_plane");
    }
  };
  auto lines = parallel_map_replicas<RescaledLines>(
      samples,
      [&](std::int64_t rep) { return rescale_profile(make_profile(rep), params, t_mesh); },
      workers);
  std::ostringstream os;
  if (format == "csv") {
    os << "replica,k,t,value\n";
    for (std::int64_t rep = 0; rep < samples; ++rep) {
      const RescaledLines& r = lines[static_cast<std::size_t>(rep)];
      for (std::size_t ki = 0; ki < r.lines.size(); ++ki)
        for (std::size_t ti = 0; ti < r.t_mesh.size(); ++ti)
          os << rep << ',' << (ki + 1) << ',' << fmt_double(r.t_mesh[ti]) << ','
             << fmt_double(r.lines[ki][ti]) << '\n';
    }
  } else {
    json j = json::array();
    for (std::int64_t rep = 0; rep < samples; ++rep) {
      const RescaledLines& r = lines[static_cast<std::size_t>(rep)];
      json jr;
      jr["replica"] = rep;
      jr["t"] = r.t_mesh;
      jr["lines"] = r.lines;
      j.push_back(jr);
    }
    os << j.dump() << '\n';
  }
  write_file(out, os.str());
  write_manifest(out, "simulate",
                 {{"model", model_name},
                  {"n", n},
                  {"beta", beta},
                  {"m", m_ref},
                  {"k", k},
                  {"samples", samples},
                  {"seed", seed},
                  {"mesh", {mesh.a, mesh.b, mesh.step}},
                  {"format", format}});
  return 0;
}

int cmd_walks(const std::string& model_name, int n, double beta, int horizon,
              std::uint64_t seed, bool shear, const std::string& out,
              const std::string& overlay) {
  WalkEnsemble e;
  ModelTag overlay_model = ModelTag::GeometricLPP;
  if (model_name == "bernoulli" || shear) overlay_model = ModelTag::BernoulliWalks;
  if (model_name == "sj") overlay_model = ModelTag::SeppalainenJohansson;
  if (n == 0) {
    // empty ensemble: emit the overlay only
    e.n = 0;
    e.beta = beta;
    e.horizon = horizon;
    e.seed = seed;
  } else if (model_name == "geometric") {
    e = sample_ni_geometric(n, beta, horizon, seed);
    if (shear) e = shear_to_bernoulli(e);
  } else if (model_name == "bernoulli") {
    // realized by shearing a geometric ensemble of the same odds
    WalkEnsemble p = sample_ni_geometric(n, beta, horizon + 2 * n + 4, seed);
    e = shear_to_bernoulli(p, std::min(horizon, shear_max_horizon(p)));
  } else if (model_name == "sj") {
    WeightGrid g = sample_weight_grid(EnvKind::bernoulli_sj(beta), n, horizon, seed);
    e = sj_walks(g, n);
  } else {
    throw argument_error("walks supports models geometric|bernoulli|sj");
  }
  require(!shear || model_name == "geometric", "--shear applies to the geometric model");
  if (n > 0) write_file(out, ensemble_to_csv(e));
  if (!overlay.empty()) {
    // same rows as the `arctic` tabulation over the trajectory times
    std::vector<double> mesh;
    for (int t = 1; t <= e.horizon; ++t) mesh.push_back(t);
    write_file(overlay, arctic_to_csv(overlay_model, std::max(n, 1), beta, mesh));
  }
  write_manifest(n > 0 ? out : overlay, "walks",
                 {{"model", model_name},
                  {"n", n},
                  {"beta", beta},
                  {"horizon", horizon},
                  {"seed", seed},
                  {"shear", shear}});
  return 0;
}

int cmd_arctic(const std::string& model_name, double n, double beta, MeshSpec mesh,
               const std::string& out) {
  ModelTag model = parse_model(model_name);
  write_file(out, arctic_to_csv(model, n, beta, mesh.values()));
  write_manifest(out, "arctic",
                 {{"model", model_name},
                  {"n", n},
                  {"beta", beta},
                  {"mesh", {mesh.a, mesh.b, mesh.step}}});
  return 0;
}

int cmd_kernel(const std::string& kind, double n, double beta, double m_ref, MeshSpec mesh,
               double s, double t, const std::string& out, const std::string& contours) {
  if (!contours.empty()) {
    require(kind != "airy", "contour export applies to prelimit/conjugated kernels");
    SymbolFns sym(n, beta, m_ref / n);
    ContourPath cw = build_contour_w(sym, sym.delta / 20.0);
    ContourPath cz = build_contour_z(sym, std::min(sym.delta, 1 - sym.delta) / 20.0);
    double tz = std::isfinite(cz.t_end) ? cz.t_end : truncate_by_descent(sym, cz, 60.0);
    write_file(contours + ".w.csv", contour_to_csv(cw, cw.t_end));
    write_file(contours + ".z.csv", contour_to_csv(cz, tz));
  }
  json records = json::array();
  QuadConfig quad;
  auto add = [&](json q, double value, double err) {
    json rec;
    rec["query"] = std::move(q);
    rec["value"] = value;
    rec["error_estimate"] = err;
    rec["quadrature_config"] = {{"nodes_per_panel", quad.nodes_per_panel}, {"tol", quad.tol}};
    records.push_back(rec);
  };
  std::vector<double> xs = mesh.values();
  if (kind == "airy") {
    for (double x : xs)
      for (double y : xs) {
        KernelValue v = airy_kernel(x, s, y, t, quad);
        add({{"x", x}, {"s", s}, {"y", y}, {"t", t}}, v.value, v.error_estimate);
      }
  } else if (kind == "prelimit" || kind == "conjugated") {
    ScalingParams params = scaling_params(ModelTag::BernoulliWalks, n, beta, m_ref);
    SymbolFns sym(n, beta, m_ref / n);
    for (double x : xs)
      for (double y : xs) {
        KernelQuery q = translate_query(params, x, s, y, t);
        json jq = {{"x", x},   {"s", s},   {"y", y},   {"t", t},
                   {"xn", q.xn}, {"sn", q.sn}, {"yn", q.yn}, {"tn", q.tn}};
        if (kind == "prelimit") {
          KernelValue v = prelimit_kernel(n, beta, q, quad);
          add(std::move(jq), v.value, v.error_estimate);
        } else {
          KernelValue v = conjugated_kernel(sym, params, q, quad);
          add(std::move(jq), v.value, v.error_estimate);
        }
      }
  } else {
    throw argument_error("kernel kind must be airy|prelimit|conjugated");
  }
  write_file(out, records.dump(2) + "\n");
  write_manifest(out, "kernel",
                 {{"kind", kind},
                  {"n", n},
                  {"beta", beta},
                  {"m", m_ref},
                  {"mesh", {mesh.a, mesh.b, mesh.step}},
                  {"s", s},
                  {"t", t}});
  return 0;
}

int cmd_twcdf(MeshSpec mesh, int order, const std::string& out) {
  FredholmConfig cfg;
  cfg.order = order;
  std::ostringstream os;
  os << "s,F2\n";
  for (double s : mesh.values())
    os << fmt_double(s) << ',' << fmt_double(tracy_widom_cdf(s, cfg)) << '\n';
  write_file(out, os.str());
  write_manifest(out, "twcdf",
                 {{"mesh", {mesh.a, mesh.b, mesh.step}}, {"order", order}});
  return 0;
}

int cmd_compare(const std::string& model_name, int n, double beta, double m_ref,
                std::int64_t samples, std::uint64_t seed, int workers,
                const std::string& out) {
  ModelTag model = parse_model(model_name);
  require(model == ModelTag::GeometricLPP || model == ModelTag::ExponentialLPP,
          "compare supports the geometric and exponential environments");
  require(samples >= 100, "need at least 100 samples");
  ScalingParams params = scaling_params(model, n, beta, m_ref);
  int cols = static_cast<int>(m_ref);
  auto vals = parallel_map_replicas<double>(
      samples,
      [&](std::int64_t rep) {
        WeightGrid g;
        if (model == ModelTag::GeometricLPP) {
          g = sample_weight_grid(EnvKind::geometric(beta), n, cols, seed,
                                 static_cast<std::uint64_t>(rep));
        } else {
          auto [geo, expo] =
              sample_coupled_grids(1e-3, n, cols, seed, static_cast<std::uint64_t>(rep));
          g = std::move(expo);
        }
        PassageProfile p = passage_profile_rsk(g, 1, {cols});
        return (p.value(1, 0) - params.g) / params.chi;
      },
      workers);
  TwTable table = tracy_widom_table(-6.0, 4.0, 0.05);
  GofResult gof = empirical_compare(EmpiricalLaw::from_samples(vals),
                                    [&](double x) { return table(x); });
  double threshold = 0.1;
  json rep;
  rep["test"] = "rescaled_top_line_vs_tracy_widom";
  rep["statistic"] = gof.ks;
  rep["cvm"] = gof.cvm;
  rep["threshold"] = threshold;
  rep["pass"] = gof.ks <= threshold;
  write_file(out, rep.dump(2) + "\n");
  write_manifest(out, "compare",
                 {{"model", model_name},
                  {"n", n},
                  {"beta", beta},
                  {"m", m_ref},
                  {"samples", samples},
                  {"seed", seed}});
  return rep["pass"].get<bool>() ? 0 : 3;
}

int cmd_verify(const std::string& suite_name, int workers, const std::string& out) {
  Suite suite = suite_name == "small" ? Suite::Small : Suite::Full;
  auto results = run_acceptance(suite, workers, &std::cout);
  if (!out.empty()) {
    json j = json::array();
    for (const auto& r : results) j.push_back(json::parse(r.to_json()));
    write_file(out, j.dump(2) + "\n");
    write_manifest(out, "verify", {{"suite", suite_name}});
  }
  for (const auto& r : results)
    if (!r.pass) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"airylab: last passage percolation, nonintersecting walks, and Airy statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string model = "geometric", out, overlay, format = "csv", kind = "airy",
              mesh_spec = "-2:2:1", suite = "small";
  int n = 10, k = 1, horizon = 10, workers = 0, order = 48;
  double beta = 1.0, m_ref = 0, s = 0, t = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool shear = false;

  auto add_workers = [&](CLI::App* c) {
    c->add_option("--workers", workers, "worker threads (0 = AIRYLAB_WORKERS or all cores)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "grids -> profiles -> rescaled lines");
  sim->add_option("--model", model, "geometric|exponential");
  sim->add_option("--n", n, "number of rows / walks")->required();
  sim->add_option("--beta", beta, "odds parameter");
  sim->add_option("--m", m_ref, "reference location (default n)");
  sim->add_option("--k", k, "number of lines");
  sim->add_option("--samples", samples, "replica count")->required();
  sim->add_option("--seed", seed, "master seed")->required();
  sim->add_option("--mesh", mesh_spec, "t mesh a:b:step");
  sim->add_option("--out", out, "output path")->required();
  sim->add_option("--format", format, "csv|json");
  add_workers(sim);

  CLI::App* wk = app.add_subcommand("walks", "nonintersecting walk ensembles");
  wk->add_option("--model", model, "geometric|bernoulli|sj");
  wk->add_option("--n", n, "number of walks")->required();
  wk->add_option("--beta", beta, "odds parameter");
  wk->add_option("--horizon", horizon, "time horizon");
  wk->add_option("--seed", seed, "master seed")->required();
  wk->add_flag("--shear", shear, "shear geometric output to Bernoulli walks");
  wk->add_option("--out", out, "trajectory CSV path")->required();
  wk->add_option("--overlay", overlay, "arctic-curve overlay CSV path");

  CLI::App* arc = app.add_subcommand("arctic", "arctic curve tabulation");
  arc->add_option("--model", model, "model name")->required();
  arc->add_option("--n", n, "rows / walks / lines");
  arc->add_option("--beta", beta, "odds parameter");
  arc->add_option("--m", m_ref, "single location (overrides --mesh)");
  arc->add_option("--mesh", mesh_spec, "location mesh a:b:step");
  arc->add_option("--out", out, "output CSV path");

  CLI::App* ker = app.add_subcommand("kernel", "kernel evaluations on a query grid");
  ker->add_option("--kind", kind, "airy|prelimit|conjugated");
  ker->add_option("--n", n, "walk count (prelimit/conjugated)");
  ker->add_option("--beta", beta, "odds parameter");
  ker->add_option("--m", m_ref, "reference location (prelimit/conjugated)");
  ker->add_option("--mesh", mesh_spec, "x (= y) grid a:b:step");
  ker->add_option("--s", s, "first time argument");
  ker->add_option("--t", t, "second time argument");
  ker->add_option("--out", out, "output JSON path")->required();
  std::string contours;
  ker->add_option("--contours", contours, "also write the built contours to PATH.{w,z}.csv");

  CLI::App* tw = app.add_subcommand("twcdf", "Tracy-Widom GUE CDF tabulation");
  tw->add_option("--mesh", mesh_spec, "s mesh a:b:step");
  tw->add_option("--order", order, "Nystrom quadrature order");
  tw->add_option("--out", out, "output CSV path")->required();

  CLI::App* cmp = app.add_subcommand("compare", "empirical law vs Tracy-Widom report");
  cmp->add_option("--model", model, "geometric|exponential");
  cmp->add_option("--n", n, "rows")->required();
  cmp->add_option("--beta", beta, "odds parameter");
  cmp->add_option("--m", m_ref, "reference location (default n)");
  cmp->add_option("--samples", samples, "replica count")->required();
  cmp->add_option("--seed", seed, "master seed")->required();
  cmp->add_option("--out", out, "report JSON path")->required();
  add_workers(cmp);

  CLI::App* ver = app.add_subcommand("verify", "run the acceptance criteria");
  ver->add_option("--suite", suite, "small|full");
  ver->add_option("--out", out, "report JSON path");
  add_workers(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      if (m_ref == 0) m_ref = n;
      return cmd_simulate(model, n, beta, m_ref, k, samples, seed, parse_mesh(mesh_spec),
                          workers, out, format);
    }
    if (wk->parsed()) return cmd_walks(model, n, beta, horizon, seed, shear, out, overlay);
    if (arc->parsed()) {
      MeshSpec mesh = m_ref != 0 ? MeshSpec{m_ref, m_ref, 1} : parse_mesh(mesh_spec);
      if (out.empty()) {
        std::cout << arctic_to_csv(parse_model(model), n, beta, mesh.values());
        return 0;
      }
      return cmd_arctic(model, n, beta, mesh, out);
    }
    if (ker->parsed()) {
      if (m_ref == 0) m_ref = 4.0 * n;
      return cmd_kernel(kind, n, beta, m_ref, parse_mesh(mesh_spec), s, t, out, contours);
    }
    if (tw->parsed()) return cmd_twcdf(parse_mesh(mesh_spec), order, out);
    if (cmp->parsed()) {
      if (m_ref == 0) m_ref = n;
      return cmd_compare(model, n, beta, m_ref, samples, seed, workers, out);
    }
    if (ver->parsed()) return cmd_verify(suite, workers, out);
  } catch (const numeric_error& e) {
    json diag;
    diag["error"] = "numeric_failure";
    diag["what"] = e.what();
    diag["estimate"] = e.estimate;
    std::cerr << diag.dump() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    json diag;
    diag["error"] = "invariant_failure";
    diag["what"] = e.what();
    std::cerr << diag.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
