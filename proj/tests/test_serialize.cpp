#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "solab/serialize.hpp"
#include "solab/shrinker_solve.hpp"

using namespace solab;

namespace {
std::vector<SampledHypersurface> corpus() {
  std::vector<SampledHypersurface> out;
  out.push_back(make_catalog(Sphere{2}, CatalogOptions{8.0, 16, 4.0}));
  out.push_back(make_catalog(RoundCylinder{1, 2}, CatalogOptions{6.0, 16, 4.0}));
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  hp.offset = 0.25;
  out.push_back(make_catalog(hp, CatalogOptions{4.0, 16, 4.0}));
  TiltedPlaneGraph tp;
  tp.normal = Vec::Unit(3, 2);
  tp.normal[0] = 0.3;
  out.push_back(make_catalog(tp, CatalogOptions{8.0, 17, 2.0}));
  out.push_back(translators::bowl_build(2, 4.8, 0.05, 48).surface);
  return out;
}
}  // namespace

TEST_CASE("surface round trip is the identity, bytes included") {
  for (const SampledHypersurface& s : corpus()) {
    const std::string a = surface_to_json(s);
    const SampledHypersurface back = surface_from_json(a);
    const std::string b = surface_to_json(back);
    CHECK(a == b);
    REQUIRE(back.sample_count() == s.sample_count());
    CHECK((back.positions - s.positions).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.normals - s.normals).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.area_weights - s.area_weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.boundary == s.boundary);
    CHECK(back.source == s.source);
    CHECK(back.compact == s.compact);
    CHECK(back.graphical == s.graphical);
    CHECK(back.catalog.has_value() == s.catalog.has_value());
  }
}

TEST_CASE("solved graph survives the round trip with heights") {
  ShrinkerSolveOptions o;
  o.nodes_per_axis = 25;
  o.half_width = 3.0;
  const ShrinkerSolveResult r = solve_graph_shrinker(o);
  REQUIRE(r.converged);
  const std::string a = surface_to_json(r.surface);
  const SampledHypersurface back = surface_from_json(a);
  REQUIRE(back.graph);
  CHECK((back.graph->heights - r.surface.graph->heights).cwiseAbs().maxCoeff() == 0.0);
  CHECK(surface_to_json(back) == a);
}

TEST_CASE("serialization is deterministic across calls") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 16, 4.0});
  CHECK(surface_to_json(s) == surface_to_json(s));
}

TEST_CASE("malformed payloads are rejected") {
  CHECK_THROWS((void)surface_from_json("{"));
  CHECK_THROWS((void)surface_from_json("{\"schema\":\"surface.v0\"}"));
  CHECK_THROWS((void)surface_from_json("{\"schema\":\"surface.v1\"}"));
}

TEST_CASE("functional json carries value, tail, params, verdict") {
  FunctionalValue v;
  v.value = 1.25;
  v.tail_bound = 1e-7;
  v.region_radius = 8.0;
  const std::string j = functional_to_json("entropy", v, {{"t0", 1.0}}, 1);
  CHECK(j.find("\"functional.v1\"") != std::string::npos);
  CHECK(j.find("\"entropy\"") != std::string::npos);
  CHECK(j.find("1.25") != std::string::npos);
  CHECK(j.find("\"t0\"") != std::string::npos);
  CHECK(j.find("\"pass\":true") != std::string::npos);
  const std::string nop = functional_to_json("entropy", v, {}, -1);
  CHECK(nop.find("\"pass\"") == std::string::npos);
}

TEST_CASE("non-finite values serialize as explicit tokens") {
  FunctionalValue v;
  v.value = std::nan("");
  std::string j = functional_to_json("x", v, {});
  CHECK(j.find("\"nan\"") != std::string::npos);
  EstimateReport rep;
  rep.name = "t";
  rep.lhs = std::numeric_limits<double>::infinity();
  rep.rhs = -std::numeric_limits<double>::infinity();
  j = estimate_to_json(rep);
  CHECK(j.find("\"inf\"") != std::string::npos);
  CHECK(j.find("\"-inf\"") != std::string::npos);
}

TEST_CASE("estimate json round-trips through the csv flattener") {
  EstimateReport rep;
  rep.name = "demo";
  rep.surface = "plane";
  rep.lhs = 0.5;
  rep.rhs = 2.0;
  rep.set_param("R", 6.0);
  rep.add_constant("C", 3.5, "3.5", "formula");
  rep.finalize();
  const std::string j = estimate_to_json(rep);
  CHECK(j.find("\"estimate.v1\"") != std::string::npos);
  const std::string csv = report_json_to_csv(j);
  CHECK(csv.find("lhs") != std::string::npos);
  CHECK(csv.find("0.5") != std::string::npos);
  // one header line and one data line
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 1);
}

TEST_CASE("spectrum json includes the verdict block when given") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 16, 4.0});
  const SpectralResult r = first_eigenvalue(s, 10.0, 2);
  StabilityVerdict v;
  v.verdict = r.eigenvalues[0] >= -1.0 - r.tol_disc;
  v.lambda1 = r.eigenvalues[0];
  v.delta = 1.0;
  const std::string with = spectrum_to_json(r, &v, 2026u);
  CHECK(with.find("\"spectrum.v1\"") != std::string::npos);
  CHECK(with.find("\"verdict\"") != std::string::npos);
  CHECK(with.find("\"seed\":2026") != std::string::npos);
  const std::string without = spectrum_to_json(r);
  CHECK(without.find("\"verdict\"") == std::string::npos);
  CHECK(spectrum_to_json(r) == without);
}

TEST_CASE("field and profile csv shapes") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 8, 4.0});
  const GeometryFields g = compute_geometry(s);
  const ResidualField res = shrinker_residual(s, g);
  const std::string csv = fields_to_csv(s, g, &res.field);
  CHECK(csv.rfind("index,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == s.sample_count() + 1);
  CHECK(csv.find("residual") != std::string::npos);

  const translators::BowlProfile p = translators::bowl_solve(2, 4.0, 0.04);
  const std::string pcsv = profile_to_csv(p);
  CHECK(pcsv.rfind("r,u,du,A2", 0) == 0);
  CHECK(std::count(pcsv.begin(), pcsv.end(), '\n') == p.r.size() + 1);
}

TEST_CASE("mean value trace csv") {
  const SampledHypersurface s = make_catalog(Sphere{2});
  const MeanValueTrace t = mean_value_monotonicity(s, s.position(0), 5.0, 1.0, 8);
  const std::string csv = trace_to_csv(t);
  CHECK(csv.rfind("s,g,h", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == t.radii.size() + 1);
}

TEST_CASE("reports csv: one row per certificate") {
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  const SampledHypersurface s = make_catalog(hp, CatalogOptions{6.0, 48, 4.0});
  std::vector<EstimateReport> reps;
  reps.push_back(integral_curvature_decay(s, 6.0, 1.0));
  reps.push_back(bootstrap_pointwise_bound(s, Vec::Zero(3), 6.0, 1.0));
  const std::string csv = reports_to_csv(reps);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("curvature-decay") != std::string::npos);
  CHECK(csv.find("bootstrap") != std::string::npos);
}
