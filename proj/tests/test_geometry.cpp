#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "solab/geometry.hpp"
#include "solab/surface.hpp"

using namespace solab;

namespace {
SampledHypersurface plane_through_origin(double R = 8.0, int res = 0) {
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  CatalogOptions o;
  o.truncation_radius = R;
  if (res > 0) o.resolution = res;
  return make_catalog(hp, o);
}
}  // namespace

TEST_CASE("round sphere: H = 1, |A|^2 = 1/2, flat derivative fields") {
  const SampledHypersurface s = make_catalog(Sphere{2});
  const GeometryFields g = compute_geometry(s);
  CHECK(g.method == "closed-form");
  for (int i = 0; i < s.sample_count(); ++i) {
    CHECK(std::abs(g.H[i] - 1.0) <= 1e-12);
    CHECK(std::abs(g.normA2[i] - 0.5) <= 1e-12);
    CHECK(std::abs(g.gradA2[i]) <= 1e-12);
    CHECK(std::abs(g.gradNormA2[i]) <= 1e-12);
    CHECK(std::abs(g.radius[i] - 2.0) <= 1e-12);
  }
}

TEST_CASE("cylinder: H = 1/sqrt(2), |A|^2 = 1/2") {
  const SampledHypersurface s = make_catalog(RoundCylinder{1, 2});
  const GeometryFields g = compute_geometry(s);
  const double Hc = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < s.sample_count(); ++i) {
    CHECK(std::abs(g.H[i] - Hc) <= 1e-12);
    CHECK(std::abs(g.normA2[i] - 0.5) <= 1e-12);
  }
}

TEST_CASE("planes are totally geodesic") {
  const SampledHypersurface s = plane_through_origin(4.0, 32);
  const GeometryFields g = compute_geometry(s);
  for (int i = 0; i < s.sample_count(); ++i) {
    CHECK(std::abs(g.H[i]) <= 1e-13);
    CHECK(std::abs(g.normA2[i]) <= 1e-13);
  }
}

TEST_CASE("shrinker residual: catalog members solve H = <x,nu>/2") {
  for (int n : {2, 3}) {
    const ResidualField r =
        shrinker_residual(make_catalog(Sphere{n}), compute_geometry(make_catalog(Sphere{n})));
    CHECK(r.sup <= 1e-12);
  }
  const SampledHypersurface cyl = make_catalog(RoundCylinder{1, 2});
  CHECK(shrinker_residual(cyl, compute_geometry(cyl)).sup <= 1e-12);
  const SampledHypersurface pl = plane_through_origin();
  CHECK(shrinker_residual(pl, compute_geometry(pl)).sup <= 1e-13);
}

TEST_CASE("offset plane misses the shrinker equation by offset/2") {
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  hp.offset = 0.3;
  const SampledHypersurface s = make_catalog(hp, CatalogOptions{4.0, 32, 4.0});
  const ResidualField r = shrinker_residual(s, compute_geometry(s));
  CHECK(std::abs(r.sup - 0.15) <= 1e-12);
}

TEST_CASE("stencil route agrees with the closed form on the sphere") {
  CatalogOptions o;
  o.resolution = 48;
  const SampledHypersurface s = make_catalog(Sphere{2}, o);
  SampledHypersurface bare = s;
  bare.catalog.reset();
  bare.source = "samples";
  const GeometryFields g = compute_geometry(bare);
  CHECK(g.method == "stencil");
  double eh = 0.0, ea = 0.0;
  int counted = 0;
  for (int i = 0; i < s.sample_count(); ++i) {
    if (!g.centered[i]) continue;
    eh = std::max(eh, std::abs(g.H[i] - 1.0));
    ea = std::max(ea, std::abs(g.normA2[i] - 0.5));
    ++counted;
  }
  CHECK(counted > 1000);
  CHECK(eh <= 5e-3);
  CHECK(ea <= 5e-3);
}

TEST_CASE("stencil curvature converges at second order") {
  auto sup_err = [](int res) {
    SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, res, 4.0});
    s.catalog.reset();
    s.source = "samples";
    const GeometryFields g = compute_geometry(s);
    double e = 0.0;
    for (int i = 0; i < s.sample_count(); ++i)
      if (g.centered[i]) e = std::max(e, std::abs(g.H[i] - 1.0));
    return e;
  };
  const double coarse = sup_err(16);
  const double fine = sup_err(32);
  // halving h divides the error by ~4 unless both already sit at roundoff
  CHECK(((coarse <= 1e-10 && fine <= 1e-10) || coarse / fine >= 3.5));
}

TEST_CASE("graph patch curvature: saddle at the origin") {
  GraphSpec g;
  g.n = 2;
  g.half_width = 1.0;
  g.nodes_per_axis = 81;
  g.height = [](const Vec& p) { return 0.25 * (p[0] * p[0] - p[1] * p[1]); };
  const SampledHypersurface s = make_graph(g);
  const GeometryFields f = compute_geometry(s);
  CHECK(f.method == "graph");
  int ic = -1;
  double dmin = 1e9;
  for (int i = 0; i < s.sample_count(); ++i) {
    const double d = s.position(i).head(2).norm();
    if (d < dmin) { dmin = d; ic = i; }
  }
  REQUIRE(ic >= 0);
  // principal curvatures +-1/2 at the saddle point: H = 0, |A|^2 = 1/2
  CHECK(std::abs(f.H[ic]) <= 2e-3);
  CHECK(std::abs(f.normA2[ic] - 0.5) <= 2e-2);
}

TEST_CASE("gradient bound |grad H| <= |x||A|/2 holds on catalog shrinkers") {
  for (const SampledHypersurface& s :
       {make_catalog(Sphere{2}), make_catalog(RoundCylinder{1, 2})}) {
    const GeometryFields g = compute_geometry(s);
    for (int i = 0; i < s.sample_count(); ++i) {
      if (!g.centered[i] || !std::isfinite(g.meanH_grad[i])) continue;
      CHECK(std::abs(g.meanH_grad_bound[i] -
                     0.5 * s.positions.row(i).norm() * std::sqrt(g.normA2[i])) <= 1e-12);
      CHECK(g.meanH_grad[i] <= g.meanH_grad_bound[i] + 1e-6);
    }
  }
}

TEST_CASE("linear growth constant on the cylinder") {
  const SampledHypersurface s = make_catalog(RoundCylinder{1, 2});
  const GeometryFields g = compute_geometry(s);
  const double C = linear_growth_constant(s, g, 8.0);
  // |A| = 1/sqrt(2) everywhere, the sup of |A|/(1+|x|) sits at the girth
  const double expect = (1.0 / std::sqrt(2.0)) / (1.0 + std::sqrt(2.0));
  CHECK(std::abs(C - expect) <= 5e-3);
}
