#include "solab/serialize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace solab {

namespace {
using nlohmann::json;

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double num_back(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("unexpected numeric token: " + s);
  }
  return j.get<double>();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

Vec vec_back(const json& a) {
  Vec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = num_back(a[i]);
  return v;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(num(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Mat mat_back(const json& rows) {
  const int R = static_cast<int>(rows.size());
  const int C = R > 0 ? static_cast<int>(rows[0].size()) : 0;
  Mat m(R, C);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) m(i, j) = num_back(rows[i][j]);
  return m;
}

const char* topology_name(AxisTopology t) {
  switch (t) {
    case AxisTopology::line: return "line";
    case AxisTopology::periodic: return "periodic";
    case AxisTopology::pole_wrap: return "pole_wrap";
  }
  return "line";
}

AxisTopology topology_back(const std::string& s) {
  if (s == "line") return AxisTopology::line;
  if (s == "periodic") return AxisTopology::periodic;
  if (s == "pole_wrap") return AxisTopology::pole_wrap;
  throw std::invalid_argument("unknown axis topology: " + s);
}

json catalog_json(const CatalogId& id) {
  json j;
  if (std::holds_alternative<Hyperplane>(id)) {
    const auto& hp = std::get<Hyperplane>(id);
    j["kind"] = "hyperplane";
    j["normal"] = vec_json(hp.normal);
    j["offset"] = num(hp.offset);
  } else if (std::holds_alternative<Sphere>(id)) {
    j["kind"] = "sphere";
    j["n"] = std::get<Sphere>(id).n;
  } else if (std::holds_alternative<RoundCylinder>(id)) {
    const auto& cy = std::get<RoundCylinder>(id);
    j["kind"] = "cylinder";
    j["k"] = cy.k;
    j["n"] = cy.n;
  } else if (std::holds_alternative<TiltedPlaneGraph>(id)) {
    j["kind"] = "tilted-plane";
    j["normal"] = vec_json(std::get<TiltedPlaneGraph>(id).normal);
  } else {
    j["kind"] = "bowl";
    j["n"] = std::get<Bowl>(id).n;
  }
  return j;
}

CatalogId catalog_back(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "hyperplane") {
    Hyperplane hp;
    hp.normal = vec_back(j.at("normal"));
    hp.offset = num_back(j.at("offset"));
    return hp;
  }
  if (kind == "sphere") return Sphere{j.at("n").get<int>()};
  if (kind == "cylinder") return RoundCylinder{j.at("k").get<int>(), j.at("n").get<int>()};
  if (kind == "tilted-plane") {
    TiltedPlaneGraph tp;
    tp.normal = vec_back(j.at("normal"));
    return tp;
  }
  if (kind == "bowl") return Bowl{j.at("n").get<int>()};
  throw std::invalid_argument("unknown catalog kind: " + kind);
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}
}  // namespace

std::string surface_to_json(const SampledHypersurface& s) {
  json j;
  j["schema"] = "surface.v1";
  j["n"] = s.n;
  j["source"] = s.source;
  j["compact"] = s.compact;
  j["graphical"] = s.graphical;
  j["positions"] = mat_json(s.positions);
  j["normals"] = mat_json(s.normals);
  j["area_weights"] = vec_json(s.area_weights);
  json bnd = json::array();
  for (char b : s.boundary) bnd.push_back(static_cast<int>(b));
  j["boundary"] = bnd;
  json axes = json::array();
  for (const auto& ax : s.chart.axes) {
    json a;
    a["size"] = ax.size;
    a["spacing"] = num(ax.spacing);
    a["origin"] = num(ax.origin);
    a["topology"] = topology_name(ax.topology);
    axes.push_back(a);
  }
  j["chart"]["axes"] = axes;
  j["chart"]["node_to_sample"] = s.chart.node_to_sample;
  j["chart"]["sample_to_node"] = s.chart.sample_to_node;
  if (s.catalog) j["catalog"] = catalog_json(*s.catalog);
  if (s.graph) {
    json g;
    g["frame"] = mat_json(s.graph->frame);
    g["base"] = vec_json(s.graph->base);
    g["heights"] = vec_json(s.graph->heights);
    j["graph"] = g;
  }
  if (s.profile) {
    json p;
    p["r"] = vec_json(s.profile->r);
    p["u"] = vec_json(s.profile->u);
    p["du"] = vec_json(s.profile->du);
    p["stride"] = s.profile->stride;
    p["row0"] = s.profile->row0;
    p["radial_axis"] = s.profile->radial_axis;
    j["profile"] = p;
  }
  return j.dump();
}

SampledHypersurface surface_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("schema").get<std::string>() != "surface.v1")
    throw std::invalid_argument("expected schema surface.v1");
  SampledHypersurface s;
  s.n = j.at("n").get<int>();
  s.source = j.at("source").get<std::string>();
  s.compact = j.at("compact").get<bool>();
  s.graphical = j.at("graphical").get<bool>();
  s.positions = mat_back(j.at("positions"));
  s.normals = mat_back(j.at("normals"));
  s.area_weights = vec_back(j.at("area_weights"));
  s.boundary.clear();
  for (const auto& b : j.at("boundary")) s.boundary.push_back(static_cast<char>(b.get<int>()));
  for (const auto& a : j.at("chart").at("axes")) {
    ChartAxis ax;
    ax.size = a.at("size").get<int>();
    ax.spacing = num_back(a.at("spacing"));
    ax.origin = num_back(a.at("origin"));
    ax.topology = topology_back(a.at("topology").get<std::string>());
    s.chart.axes.push_back(ax);
  }
  s.chart.node_to_sample = j.at("chart").at("node_to_sample").get<std::vector<int>>();
  s.chart.sample_to_node = j.at("chart").at("sample_to_node").get<std::vector<int>>();
  if (j.contains("catalog")) s.catalog = catalog_back(j.at("catalog"));
  if (j.contains("graph")) {
    GraphMeta g;
    g.frame = mat_back(j.at("graph").at("frame"));
    g.base = vec_back(j.at("graph").at("base"));
    g.heights = vec_back(j.at("graph").at("heights"));
    s.graph = g;
  }
  if (j.contains("profile")) {
    ProfileMeta p;
    p.r = vec_back(j.at("profile").at("r"));
    p.u = vec_back(j.at("profile").at("u"));
    p.du = vec_back(j.at("profile").at("du"));
    p.stride = j.at("profile").at("stride").get<int>();
    p.row0 = j.at("profile").at("row0").get<int>();
    p.radial_axis = j.at("profile").at("radial_axis").get<int>();
    s.profile = std::make_shared<const ProfileMeta>(std::move(p));
  }
  s.validate();
  return s;
}

std::string functional_to_json(const std::string& name, const FunctionalValue& v,
                               const std::vector<std::pair<std::string, double>>& params,
                               int pass) {
  json j;
  j["schema"] = "functional.v1";
  j["name"] = name;
  j["value"] = num(v.value);
  j["tail_bound"] = num(v.tail_bound);
  j["region_radius"] = num(v.region_radius);
  json p;
  for (const auto& kv : params) p[kv.first] = num(kv.second);
  j["params"] = p;
  if (pass >= 0) j["pass"] = pass == 1;
  return j.dump();
}

std::string spectrum_to_json(const SpectralResult& r, const StabilityVerdict* verdict,
                             std::optional<unsigned> seed) {
  json j;
  j["schema"] = "spectrum.v1";
  j["R"] = num(r.R);
  j["h"] = num(r.h);
  j["op"] = r.op;
  j["eigenvalues"] = vec_json(r.eigenvalues);
  j["residual_norms"] = vec_json(r.residual_norms);
  j["tol_disc"] = num(r.tol_disc);
  j["dofs"] = static_cast<int>(r.dof_sample.size());
  if (verdict) {
    j["delta"] = num(verdict->delta);
    j["lambda1"] = num(verdict->lambda1);
    j["verdict"] = verdict->verdict;
    j["margin"] = num(verdict->margin);
  }
  if (seed) j["seed"] = *seed;
  return j.dump();
}

std::string estimate_to_json(const EstimateReport& r) {
  json j;
  j["schema"] = "estimate.v1";
  j["name"] = r.name;
  j["surface"] = r.surface;
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["pass"] = r.pass;
  j["hypothesis_status"] = r.hypothesis_status;
  j["certificate"] = r.certificate;
  json cs;
  for (const auto& c : r.constants) {
    json e;
    e["value"] = num(c.value);
    e["formula"] = c.formula;
    e["provenance"] = c.provenance;
    cs[c.name] = e;
  }
  j["constants"] = cs.is_null() ? json::object() : cs;
  json p;
  for (const auto& kv : r.params) p[kv.first] = num(kv.second);
  j["params"] = p.is_null() ? json::object() : p;
  if (!r.series.empty()) {
    json sr;
    for (const auto& kv : r.series) sr[kv.first] = vec_json(kv.second);
    j["series"] = sr;
  }
  j["notes"] = r.notes;
  if (r.seed) j["seed"] = *r.seed;
  return j.dump();
}

std::string fields_to_csv(const SampledHypersurface& s, const GeometryFields& g,
                          const Vec* residual) {
  std::ostringstream os;
  const int m = s.ambient_dim();
  os << "index";
  for (int a = 0; a < m; ++a) os << ",x" << a;
  os << ",H,normA2,gradA2,gradNormA2,radius,centered,boundary";
  if (residual) os << ",residual";
  os << "\n";
  for (int i = 0; i < s.sample_count(); ++i) {
    os << i;
    for (int a = 0; a < m; ++a) os << "," << csv_num(s.positions(i, a));
    os << "," << csv_num(g.H[i]) << "," << csv_num(g.normA2[i]) << "," << csv_num(g.gradA2[i])
       << "," << csv_num(g.gradNormA2[i]) << "," << csv_num(g.radius[i]) << ","
       << static_cast<int>(g.centered[i]) << "," << static_cast<int>(s.boundary[i]);
    if (residual) os << "," << csv_num((*residual)[i]);
    os << "\n";
  }
  return os.str();
}

std::string profile_to_csv(const translators::BowlProfile& p) {
  const translators::ProfileCurvature c = translators::profile_curvature(p);
  std::ostringstream os;
  os << "r,u,du,A2\n";
  for (int i = 0; i < p.r.size(); ++i) {
    os << csv_num(p.r[i]) << "," << csv_num(p.u[i]) << "," << csv_num(p.du[i]) << ","
       << csv_num(c.A2[i]) << "\n";
  }
  return os.str();
}

std::string trace_to_csv(const MeanValueTrace& t) {
  std::ostringstream os;
  os << "s,g,h\n";
  for (int i = 0; i < t.radii.size(); ++i)
    os << csv_num(t.radii[i]) << "," << csv_num(t.g[i]) << "," << csv_num(t.h[i]) << "\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<EstimateReport>& reports) {
  std::ostringstream os;
  os << "name,surface,lhs,rhs,pass,hypothesis_status,params\n";
  for (const auto& r : reports) {
    os << r.name << "," << r.surface << "," << csv_num(r.lhs) << "," << csv_num(r.rhs) << ","
       << (r.pass ? "true" : "false") << "," << r.hypothesis_status << ",";
    bool first = true;
    for (const auto& kv : r.params) {
      if (!first) os << ";";
      os << kv.first << "=" << csv_num(kv.second);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::string report_json_to_csv(const std::string& json_text) {
  const json j = json::parse(json_text);
  const json rows = j.is_array() ? j : json::array({j});
  // union of scalar keys over all rows, in sorted key order
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (it.value().is_object()) continue;
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    }
  }
  std::sort(cols.begin(), cols.end());
  std::ostringstream os;
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ",";
      if (!row.contains(cols[c])) continue;
      const json& v = row.at(cols[c]);
      if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
          os << (i ? ";" : "") << (v[i].is_number() ? csv_num(v[i].get<double>()) : v[i].dump());
      } else if (v.is_string()) {
        os << v.get<std::string>();
      } else {
        os << v.dump();
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace solab
