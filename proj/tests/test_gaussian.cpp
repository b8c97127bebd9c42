#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "solab/gaussian.hpp"
#include "solab/surface.hpp"

using namespace solab;

namespace {
// frozen targets
constexpr double kEntropySphere2 = 1.4715177646857693;   // 4/e
constexpr double kEntropyCylinder = 1.520346901066281;   // sqrt(2 pi / e)

SampledHypersurface plane(double R = 8.0, int res = 0) {
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  CatalogOptions o;
  o.truncation_radius = R;
  if (res > 0) o.resolution = res;
  return make_catalog(hp, o);
}
}  // namespace

TEST_CASE("gaussian weight tabulates exp(-|x-c|^2/(4 t0))") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 16, 4.0});
  Vec c(3);
  c << 0.5, 0.0, -0.25;
  const GaussianWeight w = gaussian_weight(s, c, 2.0);
  CHECK(std::abs(w.normalizer - std::pow(8.0 * M_PI, -1.0)) <= 1e-15);
  for (int i = 0; i < s.sample_count(); ++i) {
    const double d2 = (s.position(i) - c).squaredNorm();
    CHECK(std::abs(w.values[i] - std::exp(-d2 / 8.0)) <= 1e-15);
  }
}

TEST_CASE("F-functional of the plane at (0,1) is 1") {
  const FunctionalValue v = f_functional(plane(), Vec::Zero(3), 1.0, 1.0);
  CHECK(std::abs(v.value - 1.0) <= 2e-6);
  CHECK(v.tail_bound >= 0.0);
  // sampled mass plus the tail certificate covers the continuum value
  CHECK(1.0 <= v.value + v.tail_bound + 1e-9);
}

TEST_CASE("F-functional of the sphere at (0,1) is 4/e to quadrature accuracy") {
  const FunctionalValue v = f_functional(make_catalog(Sphere{2}), Vec::Zero(3), 1.0);
  CHECK(std::abs(v.value - kEntropySphere2) <= 1e-9);
  CHECK(v.tail_bound == 0.0);  // compact
}

TEST_CASE("F is maximal at (0,1) on catalog shrinkers") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 48, 4.0});
  const double f0 = f_functional(s, Vec::Zero(3), 1.0).value;
  for (double t0 : {0.7, 0.9, 1.3}) CHECK(f_functional(s, Vec::Zero(3), t0).value <= f0 + 1e-9);
  Vec c = Vec::Zero(3);
  c[0] = 0.4;
  CHECK(f_functional(s, c, 1.0).value <= f0 + 1e-9);
}

TEST_CASE("entropy of the plane is 1 and flat in the in-plane directions") {
  const EntropyResult e = entropy(plane(), 1.0);
  CHECK(e.converged);
  CHECK(std::abs(e.value - 1.0) <= 1e-5);
  CHECK(e.flat_direction);
  CHECK(e.evaluations > 0);
}

TEST_CASE("entropy of the sphere: 4/e attained at (0,1)") {
  const EntropyResult e = entropy(make_catalog(Sphere{2}));
  CHECK(e.converged);
  CHECK(std::abs(e.value - kEntropySphere2) <= 1e-3);
  CHECK(e.center.norm() <= 1e-2);
  CHECK(std::abs(e.t0 - 1.0) <= 1e-2);
}

TEST_CASE("entropy of the cylinder: sqrt(2 pi / e)") {
  const EntropyResult e = entropy(make_catalog(RoundCylinder{1, 2}), 2.0);
  CHECK(e.converged);
  CHECK(std::abs(e.value - kEntropyCylinder) <= 1e-3);
}

TEST_CASE("entropy evaluation is deterministic") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 32, 4.0});
  const EntropyResult a = entropy(s);
  const EntropyResult b = entropy(s);
  CHECK(a.value == b.value);
  CHECK(a.t0 == b.t0);
  CHECK(a.evaluations == b.evaluations);
  CHECK((a.center - b.center).norm() == 0.0);
}

TEST_CASE("weighted integral needs an entropy bound for noncompact tails") {
  const SampledHypersurface s = plane(6.0, 48);
  const GaussianWeight w = gaussian_weight(s, Vec::Zero(3), 1.0);
  const Vec ones = Vec::Ones(s.sample_count());
  const FunctionalValue with = weighted_integral(s, ones, w, 1.0);
  CHECK(with.tail_bound > 0.0);
  // annuli start at the rim (radius ~6): first term ~ 9.8 * 12^2 * e^{-9} ~ 0.24
  CHECK(with.tail_bound <= 0.3);
  CHECK(with.region_radius >= 5.9);
}

TEST_CASE("volume growth certificate on catalog surfaces") {
  struct Case {
    SampledHypersurface s;
    double lambda0;
  };
  const Case cases[] = {{plane(), 1.0},
                        {make_catalog(Sphere{2}), kEntropySphere2},
                        {make_catalog(RoundCylinder{1, 2}), 1.5}};
  for (const Case& c : cases) {
    const Vec p = c.s.position(0);
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const EstimateReport rep = volume_growth_certificate(c.s, p, r, c.lambda0);
      CHECK(rep.pass);
      CHECK(rep.lhs >= 0.0);
      CHECK(rep.lhs <= rep.rhs);
    }
  }
}

TEST_CASE("volume growth fails when the entropy bound is a lie") {
  // the sphere packs more area into B_2 than a lambda0 = 0.2 surface may
  const SampledHypersurface s = make_catalog(Sphere{2});
  const EstimateReport rep = volume_growth_certificate(s, s.position(0), 2.0, 0.2);
  CHECK_FALSE(rep.pass);
}
