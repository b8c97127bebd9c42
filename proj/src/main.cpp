// solab: build soliton surfaces, run verifications and certificates, emit
// JSON/CSV reports. Exit 0 all pass, 1 a check failed, 2 usage/precondition.
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "solab/estimates.hpp"
#include "solab/gaussian.hpp"
#include "solab/geometry.hpp"
#include "solab/serialize.hpp"
#include "solab/shrinker_solve.hpp"
#include "solab/stability.hpp"
#include "solab/surface.hpp"
#include "solab/translators.hpp"

namespace {
using nlohmann::json;
using namespace solab;

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunContext {
  std::string out_dir = "out";
  std::string command;
  json config = json::object();
  json reports = json::array();
  bool all_pass = true;
  bool ran = false;
  unsigned seed = 2026;
  std::string started;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(const std::string& name, const std::string& text) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path p = fs::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
  }

  void add_report(const std::string& name, const std::string& path, bool pass,
                  double wall_ms) {
    json r;
    r["name"] = name;
    r["path"] = path;
    r["pass"] = pass;
    r["wall_ms"] = wall_ms;
    reports.push_back(r);
    all_pass = all_pass && pass;
  }
};

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_manifest(RunContext& ctx) {
  json m;
  m["schema"] = "manifest.v1";
  m["tool"] = "solab";
  m["version"] = kVersion;
  m["command"] = ctx.command;
  m["config"] = ctx.config;
  m["out_dir"] = ctx.out_dir;
  m["seed"] = ctx.seed;
  m["reports"] = ctx.reports;
  m["pass"] = ctx.all_pass;
  m["started"] = ctx.started;
  m["finished"] = iso_now();
  m["wall_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctx.t0).count();
  ctx.write("manifest.json", m.dump(2) + "\n");
}

// stopwatch for one report entry
struct Timer {
  std::chrono::steady_clock::time_point t = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
  }
};

Vec parse_vec(const std::string& text) {
  Vec v;
  if (text.empty()) return v;
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
  v.resize(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
  return v;
}

// ---- surface selection shared by the work commands ---------------------------

struct SurfaceArgs {
  std::string surface = "sphere";
  int n = 2;
  int k = 1;
  double rtrunc = 8.0;
  int resolution = 0;
  double half_width = 0.0;  // 0 = per-kind default (4 tilted patch, 8.5 solved graph)
  std::string tilt;
  std::string path;
  double bend = 0.4;
  int nodes = 75;
};

void add_surface_flags(CLI::App* cmd, SurfaceArgs& a) {
  cmd->add_option("--surface", a.surface,
                  "sphere|cylinder|plane|tilted-plane|bowl|graph (or use --path)");
  cmd->add_option("--n", a.n, "intrinsic dimension");
  cmd->add_option("--k", a.k, "cylinder sphere-factor dimension");
  cmd->add_option("--rtrunc", a.rtrunc, "truncation radius for noncompact surfaces");
  cmd->add_option("--resolution", a.resolution, "samples per axis (0 = default)");
  cmd->add_option("--half-width", a.half_width, "chart half width for graph patches");
  cmd->add_option("--tilt", a.tilt, "graph direction for tilted-plane, comma separated");
  cmd->add_option("--path", a.path, "load a surface.v1 JSON file instead");
  cmd->add_option("--bend", a.bend, "rim amplitude for the solved graph");
  cmd->add_option("--nodes", a.nodes, "nodes per axis for the solved graph");
}

SampledHypersurface build_surface(const SurfaceArgs& a, RunContext& ctx) {
  ctx.config["surface"] = a.path.empty() ? a.surface : a.path;
  ctx.config["n"] = a.n;
  ctx.config["rtrunc"] = a.rtrunc;
  ctx.config["resolution"] = a.resolution;
  if (!a.path.empty()) return surface_from_json(read_file(a.path));
  if (a.n < 2) throw std::invalid_argument("n must be >= 2");
  CatalogOptions opts;
  opts.truncation_radius = a.rtrunc;
  opts.resolution = a.resolution;
  opts.graph_half_width = a.half_width > 0 ? a.half_width : 4.0;
  if (a.surface == "sphere") return make_catalog(Sphere{a.n}, opts);
  if (a.surface == "cylinder") {
    ctx.config["k"] = a.k;
    return make_catalog(RoundCylinder{a.k, a.n}, opts);
  }
  if (a.surface == "plane") {
    Hyperplane hp;
    hp.normal = Vec::Unit(a.n + 1, a.n);
    return make_catalog(hp, opts);
  }
  if (a.surface == "tilted-plane") {
    TiltedPlaneGraph tp;
    if (a.tilt.empty()) {
      tp.normal = Vec::Unit(a.n + 1, a.n);
      tp.normal[0] = 0.3;
    } else {
      tp.normal = parse_vec(a.tilt);
    }
    return make_catalog(tp, opts);
  }
  if (a.surface == "bowl") return make_catalog(Bowl{a.n}, opts);
  if (a.surface == "graph") {
    ShrinkerSolveOptions o;
    o.n = a.n;
    if (a.half_width > 0) o.half_width = a.half_width;
    o.nodes_per_axis = a.nodes;
    o.bend = a.bend;
    ctx.config["bend"] = a.bend;
    ctx.config["nodes"] = a.nodes;
    ctx.config["half_width"] = o.half_width;
    ShrinkerSolveResult r = solve_graph_shrinker(o);
    if (!r.converged) throw std::runtime_error("graph solve did not converge");
    return r.surface;
  }
  throw std::invalid_argument("unknown surface: " + a.surface);
}

// default marked point: the sampled point nearest the origin
Vec default_x0(const SampledHypersurface& s) {
  int best = 0;
  double bd = s.radius(0);
  for (int i = 1; i < s.sample_count(); ++i)
    if (s.radius(i) < bd) bd = s.radius(best = i);
  return s.position(best);
}

void require_theorem_dim(int n) {
  if (n > 6) throw std::invalid_argument("estimate commands require 2 <= n <= 6");
}

// config-file fallback for flags not given on the command line
template <class T>
void cfg_fill(const CLI::App* cmd, const std::string& flag, const json& cfg,
              const std::string& key, T& var) {
  if (cmd->count(flag) == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

std::string csv_to_json(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw std::invalid_argument("empty CSV input");
  std::vector<std::string> cols;
  {
    std::stringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) cols.push_back(tok);
  }
  json rows = json::array();
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    json row;
    std::size_t c = 0;
    while (std::getline(ls, tok, ',') && c < cols.size()) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        row[cols[c]] = used == tok.size() ? json(v) : json(tok);
      } catch (...) {
        row[cols[c]] = tok;
      }
      ++c;
    }
    rows.push_back(row);
  }
  return rows.dump();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soliton-lab: numerics for self-shrinkers and translators"};
  app.set_version_flag("--version", std::string("solab ") + kVersion);
  app.require_subcommand(1);

  RunContext ctx;
  ctx.started = iso_now();
  const char* env_out = std::getenv("SOLITONLAB_OUT");
  if (env_out && *env_out) ctx.out_dir = env_out;
  std::string config_path;
  app.add_option("--out", ctx.out_dir, "output directory");
  app.add_option("--config", config_path, "JSON config file (flags win over it)");
  app.add_option("--seed", ctx.seed, "seed echoed into reports that use one");
  json cfg = json::object();

  // parse --config early so subcommand callbacks can consult it
  app.preparse_callback([&](std::size_t) {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") cfg = json::parse(read_file(argv[i + 1]));
  });

  SurfaceArgs sa;

  // ---- catalog ----------------------------------------------------------------
  auto* c_cat = app.add_subcommand("catalog", "list catalog surfaces");
  bool cat_json = false;
  int cat_n = 2;
  c_cat->add_flag("--json", cat_json, "machine-readable listing");
  c_cat->add_option("--n", cat_n, "dimension of the listed members");
  c_cat->callback([&] {
    ctx.command = "catalog";
    ctx.ran = true;
    if (cat_n < 2) throw std::invalid_argument("n must be >= 2");
    json items = json::array();
    auto add = [&](const std::string& id, const std::string& data) {
      json it;
      it["id"] = id;
      it["data"] = data;
      items.push_back(it);
    };
    std::ostringstream rs;
    rs << std::sqrt(2.0 * cat_n);
    add("sphere n=" + std::to_string(cat_n), "radius " + rs.str());
    for (int k = 1; k < cat_n; ++k) {
      std::ostringstream cs;
      cs << "radius " << std::sqrt(2.0 * k);
      add("cylinder k=" + std::to_string(k) + " n=" + std::to_string(cat_n), cs.str());
    }
    add("plane n=" + std::to_string(cat_n), "through the origin");
    add("tilted-plane n=" + std::to_string(cat_n), "graph over a tilted direction");
    add("bowl n=" + std::to_string(cat_n), "rotationally symmetric translator");
    if (cat_json) {
      json out;
      out["schema"] = "catalog.v1";
      out["n"] = cat_n;
      out["items"] = items;
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& it : items)
        std::cout << it["id"].get<std::string>() << "  " << it["data"].get<std::string>() << "\n";
      if (cat_n > 6)
        std::cout << "note: closed forms hold for every n >= 2; estimate commands refuse n > 6\n";
    }
    ctx.config["n"] = cat_n;
  });

  // ---- verify -------------------------------------------------------------------
  auto* c_ver = app.add_subcommand("verify", "soliton equation and operator identities");
  double ver_tol_res = 1e-10, ver_tol_id = 1e-3, ver_tol_simons = 1e-8;
  add_surface_flags(c_ver, sa);
  c_ver->add_option("--tol-residual", ver_tol_res, "shrinker residual tolerance");
  c_ver->add_option("--tol-identity", ver_tol_id, "eigenfunction identity tolerance");
  c_ver->add_option("--tol-simons", ver_tol_simons, "Simons identity tolerance");
  c_ver->callback([&] {
    ctx.command = "verify";
    ctx.ran = true;
    cfg_fill(c_ver, "--surface", cfg, "surface", sa.surface);
    cfg_fill(c_ver, "--n", cfg, "n", sa.n);
    cfg_fill(c_ver, "--k", cfg, "k", sa.k);
    cfg_fill(c_ver, "--rtrunc", cfg, "rtrunc", sa.rtrunc);
    const SampledHypersurface s = build_surface(sa, ctx);
    const GeometryFields g = compute_geometry(s);
    Timer t1;
    const ResidualField res = shrinker_residual(s, g);
    const bool p1 = res.sup <= ver_tol_res;
    ctx.write("residual.json",
              functional_to_json("shrinker-residual", {res.sup, 0.0, sa.rtrunc},
                                 {{"tol", ver_tol_res}}, p1 ? 1 : 0));
    ctx.write("fields.csv", fields_to_csv(s, g, &res.field));
    ctx.add_report("shrinker-residual", "residual.json", p1, t1.ms());

    Timer t2;
    const IdentityResiduals ir = eigen_identity_residuals(s, Vec::Unit(s.ambient_dim(), 0));
    const bool p2 = ir.rH <= ver_tol_id && ir.rV <= ver_tol_id;
    ctx.write("identities.json",
              functional_to_json("eigen-identities", {std::max(ir.rH, ir.rV), 0.0, sa.rtrunc},
                                 {{"rH", ir.rH}, {"rV", ir.rV}, {"tol", ver_tol_id}}, p2 ? 1 : 0));
    ctx.add_report("eigen-identities", "identities.json", p2, t2.ms());

    Timer t3;
    const double sm = simons_identity_residual(s);
    const bool p3 = sm <= ver_tol_simons;
    ctx.write("simons.json", functional_to_json("simons-identity", {sm, 0.0, sa.rtrunc},
                                                {{"tol", ver_tol_simons}}, p3 ? 1 : 0));
    ctx.add_report("simons-identity", "simons.json", p3, t3.ms());
  });

  // ---- spectrum -----------------------------------------------------------------
  auto* c_spec = app.add_subcommand("spectrum", "Dirichlet spectrum of the stability operator");
  double sp_R = 8.0, sp_delta = 0.5;
  int sp_m = 4;
  add_surface_flags(c_spec, sa);
  c_spec->add_option("--R", sp_R, "ball radius");
  c_spec->add_option("--delta", sp_delta, "stability threshold");
  c_spec->add_option("--m", sp_m, "number of eigenvalues");
  c_spec->callback([&] {
    ctx.command = "spectrum";
    ctx.ran = true;
    cfg_fill(c_spec, "--surface", cfg, "surface", sa.surface);
    cfg_fill(c_spec, "--R", cfg, "R", sp_R);
    cfg_fill(c_spec, "--delta", cfg, "delta", sp_delta);
    if (sa.resolution == 0) {
      // defaults sized for the dense eigensolver cap
      if (sa.surface == "sphere") sa.resolution = 32;
      if (sa.surface == "plane") sa.resolution = 64;
      if (sa.surface == "cylinder") sa.resolution = 32;
    }
    if (c_spec->count("--rtrunc") == 0 && !cfg.contains("rtrunc"))
      sa.rtrunc = std::max(sa.rtrunc, sp_R + 1.0);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["R"] = sp_R;
    ctx.config["delta"] = sp_delta;
    ctx.config["m"] = sp_m;
    Timer t;
    const SpectralResult sr = first_eigenvalue(s, sp_R, sp_m);
    StabilityVerdict v;
    v.lambda1 = sr.eigenvalues[0];
    v.tol_disc = sr.tol_disc;
    v.R = sp_R;
    v.delta = sp_delta;
    v.margin = v.lambda1 + sp_delta;
    v.verdict = v.lambda1 >= -sp_delta - v.tol_disc;
    ctx.write("spectrum.json", spectrum_to_json(sr, &v, ctx.seed));
    ctx.add_report("spectrum", "spectrum.json", v.verdict, t.ms());
    std::cout << "lambda1 = " << v.lambda1 << "  verdict " << (v.verdict ? "stable" : "unstable")
              << " at delta = " << sp_delta << "\n";
  });

  // ---- entropy ------------------------------------------------------------------
  auto* c_ent = app.add_subcommand("entropy", "sup of the Gaussian area functional");
  add_surface_flags(c_ent, sa);
  c_ent->callback([&] {
    ctx.command = "entropy";
    ctx.ran = true;
    cfg_fill(c_ent, "--surface", cfg, "surface", sa.surface);
    const SampledHypersurface s = build_surface(sa, ctx);
    Timer t;
    const EntropyResult e = entropy(s);
    std::vector<std::pair<std::string, double>> params = {
        {"t0", e.t0},
        {"evaluations", static_cast<double>(e.evaluations)},
        {"flat_direction", e.flat_direction ? 1.0 : 0.0}};
    for (int i = 0; i < e.center.size(); ++i)
      params.emplace_back("x0_" + std::to_string(i), e.center[i]);
    ctx.write("entropy.json", functional_to_json("entropy", {e.value, e.tail_bound, sa.rtrunc},
                                                 params, e.converged ? 1 : 0));
    ctx.add_report("entropy", "entropy.json", e.converged, t.ms());
    std::cout << "entropy = " << e.value << "\n";
  });

  // ---- estimates ------------------------------------------------------------------
  auto* c_est = app.add_subcommand("estimates", "certificate checks");
  c_est->require_subcommand(1);
  double es_R = 8.0, es_lambda0 = 2.0, es_a = 0.5, es_q = 0.0, es_r0 = 0.5, es_smax = 1.0,
         es_eps = -1.0, es_p = 2.0, es_r = 0.5, es_inner = -1.0, es_outer = -1.0;
  int es_k = 2, es_count = 16;
  std::string es_x0;

  auto run_estimate = [&](const std::string& name, EstimateReport rep) {
    rep.seed = ctx.seed;
    ctx.write(name + ".json", estimate_to_json(rep));
    ctx.write(name + ".csv", reports_to_csv({rep}));
    ctx.add_report(rep.name, name + ".json", rep.pass, 0.0);
    std::cout << rep.name << ": lhs = " << rep.lhs << "  rhs = " << rep.rhs << "  "
              << (rep.pass ? "pass" : "FAIL");
    if (rep.hypothesis_status != "ok") std::cout << "  [" << rep.hypothesis_status << "]";
    std::cout << "\n";
  };

  auto* e_prop = c_est->add_subcommand("prop31", "integral curvature decay under 1/2-stability");
  add_surface_flags(e_prop, sa);
  e_prop->add_option("--R", es_R);
  e_prop->add_option("--lambda0", es_lambda0, "entropy bound");
  e_prop->add_option("--a", es_a, "decay rate parameter");
  e_prop->callback([&] {
    ctx.command = "estimates prop31";
    ctx.ran = true;
    cfg_fill(e_prop, "--R", cfg, "R", es_R);
    cfg_fill(e_prop, "--lambda0", cfg, "lambda0", es_lambda0);
    require_theorem_dim(sa.n);
    if (e_prop->count("--rtrunc") == 0 && !cfg.contains("rtrunc"))
      sa.rtrunc = std::max(sa.rtrunc, es_R + 1.0);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["R"] = es_R;
    ctx.config["lambda0"] = es_lambda0;
    ctx.config["a"] = es_a;
    run_estimate("decay", integral_curvature_decay(s, es_R, es_lambda0, es_a));
  });

  auto* e_mv = c_est->add_subcommand("meanvalue", "weighted mean value monotonicity");
  add_surface_flags(e_mv, sa);
  e_mv->add_option("--x0", es_x0, "center, comma separated (default: sample nearest 0)");
  e_mv->add_option("--R", es_R);
  e_mv->add_option("--smax", es_smax, "largest ball radius");
  e_mv->add_option("--count", es_count, "number of radii");
  e_mv->callback([&] {
    ctx.command = "estimates meanvalue";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["R"] = es_R;
    ctx.config["smax"] = es_smax;
    ctx.config["count"] = es_count;
    const Vec x0 = es_x0.empty() ? default_x0(s) : parse_vec(es_x0);
    Timer t;
    const MeanValueTrace tr = mean_value_monotonicity(s, x0, es_R, es_smax, es_count);
    EstimateReport rep;
    rep.name = "mean-value";
    rep.surface = s.source;
    rep.lhs = tr.worst_drop;
    rep.rhs = 1e-8;
    rep.pass = tr.monotone;
    rep.certificate = false;
    rep.set_param("R", tr.R);
    rep.set_param("s_max", es_smax);
    rep.set_param("count", es_count);
    rep.add_constant("C_meas", tr.C_meas, "sup |A|/(1+|x|) on B_R", "measured");
    rep.add_constant("Cprime", tr.Cprime, "1/8 + 2 C_meas^2");
    rep.series.emplace_back("s", tr.radii);
    rep.series.emplace_back("g", tr.g);
    rep.series.emplace_back("h", tr.h);
    ctx.write("trace.csv", trace_to_csv(tr));
    run_estimate("meanvalue", rep);
    ctx.reports.back()["wall_ms"] = t.ms();
  });

  auto* e_bs = c_est->add_subcommand("bootstrap", "pointwise bound from the decay chain");
  add_surface_flags(e_bs, sa);
  e_bs->add_option("--x0", es_x0);
  e_bs->add_option("--R", es_R);
  e_bs->add_option("--lambda0", es_lambda0);
  e_bs->callback([&] {
    ctx.command = "estimates bootstrap";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    if (e_bs->count("--rtrunc") == 0 && !cfg.contains("rtrunc"))
      sa.rtrunc = std::max(sa.rtrunc, es_R + 1.0);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["R"] = es_R;
    ctx.config["lambda0"] = es_lambda0;
    const Vec x0 = es_x0.empty() ? default_x0(s) : parse_vec(es_x0);
    run_estimate("bootstrap", bootstrap_pointwise_bound(s, x0, es_R, es_lambda0));
  });

  auto* e_cs = c_est->add_subcommand("choischoen", "small total curvature pointwise bound");
  add_surface_flags(e_cs, sa);
  e_cs->add_option("--x0", es_x0);
  e_cs->add_option("--r0", es_r0);
  e_cs->add_option("--eps", es_eps, "energy threshold (default: formula value)");
  e_cs->callback([&] {
    ctx.command = "estimates choischoen";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["r0"] = es_r0;
    const Vec x0 = es_x0.empty() ? default_x0(s) : parse_vec(es_x0);
    run_estimate("choischoen", choi_schoen(s, x0, es_r0, es_eps));
  });

  auto* e_ssy = c_est->add_subcommand("ssy", "weighted curvature power inequality");
  add_surface_flags(e_ssy, sa);
  e_ssy->add_option("--q", es_q, "power offset, 0 <= q < sqrt(2/(n+1))");
  e_ssy->add_option("--a", es_a, "chase parameter (negative = default)");
  e_ssy->add_option("--R", es_R);
  e_ssy->add_option("--inner", es_inner, "cutoff plateau radius (default R/2)");
  e_ssy->add_option("--outer", es_outer, "cutoff support radius (default R)");
  e_ssy->callback([&] {
    ctx.command = "estimates ssy";
    ctx.ran = true;
    cfg_fill(e_ssy, "--q", cfg, "q", es_q);
    cfg_fill(e_ssy, "--R", cfg, "R", es_R);
    require_theorem_dim(sa.n);
    if (e_ssy->count("--rtrunc") == 0 && !cfg.contains("rtrunc"))
      sa.rtrunc = std::max(sa.rtrunc, es_R + 1.0);
    const SampledHypersurface s = build_surface(sa, ctx);
    const double inner = es_inner > 0 ? es_inner : es_R / 2;
    const double outer = es_outer > 0 ? es_outer : es_R;
    ctx.config["q"] = es_q;
    ctx.config["R"] = es_R;
    ctx.config["inner"] = inner;
    ctx.config["outer"] = outer;
    const Cutoff phi = linear_annulus_cutoff(s, Vec::Zero(s.ambient_dim()), inner, outer);
    run_estimate("ssy", ssy_inequality(s, phi, es_q, e_ssy->count("--a") ? es_a : -1.0, es_R));
  });

  auto* e_l43 = c_est->add_subcommand("lemma43", "scale invariant curvature energy");
  add_surface_flags(e_l43, sa);
  e_l43->add_option("--x0", es_x0);
  e_l43->add_option("--r", es_r, "ball radius, r <= theta/2");
  e_l43->add_option("--p", es_p, "curvature power in [2,4]");
  e_l43->callback([&] {
    ctx.command = "estimates lemma43";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["r"] = es_r;
    ctx.config["p"] = es_p;
    const Vec x0 = es_x0.empty() ? default_x0(s) : parse_vec(es_x0);
    run_estimate("lemma43", scale_invariant_energy(s, x0, es_r, es_p));
  });

  auto* e_log = c_est->add_subcommand("logcutoff", "logarithmic cutoff energy over dyadic rings");
  add_surface_flags(e_log, sa);
  e_log->add_option("--x0", es_x0);
  e_log->add_option("--r0", es_r0, "outer radius, r0 <= theta/4");
  e_log->add_option("--rings", es_k, "ring count k >= 2");
  e_log->callback([&] {
    ctx.command = "estimates logcutoff";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["r0"] = es_r0;
    ctx.config["k"] = es_k;
    const Vec x0 = es_x0.empty() ? default_x0(s) : parse_vec(es_x0);
    run_estimate("logcutoff", log_cutoff_energy(s, x0, es_r0, es_k));
  });

  auto* e_vol = c_est->add_subcommand("volgrowth", "entropy controlled volume growth");
  add_surface_flags(e_vol, sa);
  e_vol->add_option("--x0", es_x0);
  e_vol->add_option("--r", es_r);
  e_vol->add_option("--lambda0", es_lambda0);
  e_vol->callback([&] {
    ctx.command = "estimates volgrowth";
    ctx.ran = true;
    require_theorem_dim(sa.n);
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["r"] = es_r;
    ctx.config["lambda0"] = es_lambda0;
    const Vec x0 = es_x0.empty() ? Vec::Zero(s.ambient_dim()) : parse_vec(es_x0);
    run_estimate("volgrowth", volume_growth_certificate(s, x0, es_r, es_lambda0));
  });

  // ---- translator -----------------------------------------------------------------
  auto* c_tr = app.add_subcommand("translator", "bowl soliton and translator checks");
  c_tr->require_subcommand(1);
  double tr_rmax = 10.0, tr_step = 0.01, tr_region = 6.0, tr_lambda0 = 2.0, tr_tol = 1e-6,
         tr_simons_tol = 1e-2;
  int tr_rows = 0, tr_m = 1;

  auto* t_bowl = c_tr->add_subcommand("bowl", "solve the bowl profile and report curvature");
  t_bowl->add_option("--n", sa.n);
  t_bowl->add_option("--rmax", tr_rmax);
  t_bowl->add_option("--step", tr_step);
  t_bowl->add_option("--rows", tr_rows, "radial chart rows (0 = default)");
  t_bowl->add_option("--lambda0", tr_lambda0, "volume-ratio reference");
  t_bowl->callback([&] {
    ctx.command = "translator bowl";
    ctx.ran = true;
    cfg_fill(t_bowl, "--n", cfg, "n", sa.n);
    cfg_fill(t_bowl, "--rmax", cfg, "rmax", tr_rmax);
    cfg_fill(t_bowl, "--step", cfg, "step", tr_step);
    ctx.config["n"] = sa.n;
    ctx.config["rmax"] = tr_rmax;
    ctx.config["step"] = tr_step;
    Timer t;
    const translators::BowlSolution b = translators::bowl_build(sa.n, tr_rmax, tr_step, tr_rows);
    ctx.write("profile.csv", profile_to_csv(b.profile));
    EstimateReport rep = translators::translator_curvature_report(b.surface, tr_lambda0);
    rep.seed = ctx.seed;
    ctx.write("curvature.json", estimate_to_json(rep));
    ctx.add_report("bowl", "curvature.json", rep.pass, t.ms());
    std::cout << "sup |A|^2 = " << rep.lhs << " (tip expectation 1/n = " << 1.0 / sa.n << ")\n";
  });

  auto* t_res = c_tr->add_subcommand("residual", "H + <e_{n+1}, nu> on a surface");
  add_surface_flags(t_res, sa);
  t_res->add_option("--tol", tr_tol);
  t_res->callback([&] {
    ctx.command = "translator residual";
    ctx.ran = true;
    sa.surface = t_res->count("--surface") ? sa.surface : "bowl";
    const SampledHypersurface s = build_surface(sa, ctx);
    Timer t;
    const translators::TranslatorResidual r = translators::translator_residual(s);
    const bool p = r.sup <= tr_tol;
    ctx.write("translator_residual.json",
              functional_to_json("translator-residual", {r.sup, 0.0, sa.rtrunc},
                                 {{"tol", tr_tol}}, p ? 1 : 0));
    ctx.add_report("translator-residual", "translator_residual.json", p, t.ms());
    std::cout << "sup residual = " << r.sup << "\n";
  });

  auto* t_spec = c_tr->add_subcommand("spectrum", "translator stability spectrum");
  add_surface_flags(t_spec, sa);
  t_spec->add_option("--region", tr_region, "horizontal radius of the Dirichlet region");
  t_spec->add_option("--m", tr_m);
  t_spec->callback([&] {
    ctx.command = "translator spectrum";
    ctx.ran = true;
    sa.surface = t_spec->count("--surface") ? sa.surface : "bowl";
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["region"] = tr_region;
    Timer t;
    const SpectralResult sr = translators::translator_first_eigenvalue(s, tr_region, tr_m);
    StabilityVerdict v;
    v.lambda1 = sr.eigenvalues[0];
    v.tol_disc = sr.tol_disc;
    v.R = tr_region;
    v.delta = 0.0;
    v.margin = v.lambda1;
    v.verdict = v.lambda1 >= -v.tol_disc;
    ctx.write("translator_spectrum.json", spectrum_to_json(sr, &v, ctx.seed));
    ctx.add_report("translator-spectrum", "translator_spectrum.json", v.verdict, t.ms());
    std::cout << "lambda1 = " << v.lambda1 << "\n";
  });

  auto* t_sim = c_tr->add_subcommand("simons", "translator Simons identity residual");
  add_surface_flags(t_sim, sa);
  t_sim->add_option("--tol", tr_simons_tol);
  t_sim->callback([&] {
    ctx.command = "translator simons";
    ctx.ran = true;
    sa.surface = t_sim->count("--surface") ? sa.surface : "bowl";
    const SampledHypersurface s = build_surface(sa, ctx);
    Timer t;
    const translators::SimonsResidualReport r = translators::translator_simons_residual(s);
    const bool p = r.sup <= tr_simons_tol;
    ctx.write("translator_simons.json",
              functional_to_json("translator-simons", {r.sup, 0.0, sa.rtrunc},
                                 {{"sup_one_sided", r.sup_one_sided},
                                  {"one_sided_count", static_cast<double>(r.one_sided_count)},
                                  {"tol", tr_simons_tol}},
                                 p ? 1 : 0));
    ctx.add_report("translator-simons", "translator_simons.json", p, t.ms());
    std::cout << "sup simons residual = " << r.sup << "\n";
  });

  auto* t_rep = c_tr->add_subcommand("report", "uniform curvature measurement report");
  add_surface_flags(t_rep, sa);
  t_rep->add_option("--lambda0", tr_lambda0);
  t_rep->callback([&] {
    ctx.command = "translator report";
    ctx.ran = true;
    sa.surface = t_rep->count("--surface") ? sa.surface : "bowl";
    const SampledHypersurface s = build_surface(sa, ctx);
    ctx.config["lambda0"] = tr_lambda0;
    Timer t;
    EstimateReport rep = translators::translator_curvature_report(s, tr_lambda0);
    rep.seed = ctx.seed;
    ctx.write("curvature.json", estimate_to_json(rep));
    ctx.add_report("translator-report", "curvature.json", rep.pass, t.ms());
  });

  // ---- convert --------------------------------------------------------------------
  auto* c_conv = app.add_subcommand("convert", "JSON <-> CSV for report files");
  std::string conv_in, conv_to = "csv", conv_name;
  c_conv->add_option("--in", conv_in, "input file")->required();
  c_conv->add_option("--to", conv_to, "csv or json");
  c_conv->add_option("--name", conv_name, "output file name (default derived)");
  c_conv->callback([&] {
    ctx.command = "convert";
    ctx.ran = true;
    const std::string text = read_file(conv_in);
    const std::string stem = std::filesystem::path(conv_in).stem().string();
    ctx.config["in"] = conv_in;
    ctx.config["to"] = conv_to;
    Timer t;
    if (conv_to == "csv") {
      const std::string name = conv_name.empty() ? stem + ".csv" : conv_name;
      ctx.write(name, report_json_to_csv(text));
      ctx.add_report("convert", name, true, t.ms());
    } else if (conv_to == "json") {
      const std::string name = conv_name.empty() ? stem + ".json" : conv_name;
      ctx.write(name, csv_to_json(text));
      ctx.add_report("convert", name, true, t.ms());
    } else {
      throw std::invalid_argument("--to must be csv or json");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!ctx.ran) return 2;
  try {
    write_manifest(ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.all_pass ? 0 : 1;
}
