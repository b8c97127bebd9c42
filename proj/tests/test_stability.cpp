#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "solab/stability.hpp"
#include "solab/surface.hpp"

using namespace solab;

namespace {
SampledHypersurface plane(double R, int res) {
  Hyperplane hp;
  hp.normal = Vec::Unit(3, 2);
  CatalogOptions o;
  o.truncation_radius = R;
  o.resolution = res;
  return make_catalog(hp, o);
}
}  // namespace

TEST_CASE("operator identities hold on catalog shrinkers") {
  const Vec v = Vec::Unit(3, 0);
  const IdentityResiduals sph = eigen_identity_residuals(make_catalog(Sphere{2}), v);
  CHECK(sph.rH <= 1e-3);
  CHECK(sph.rV <= 1e-3);
  const IdentityResiduals cyl = eigen_identity_residuals(make_catalog(RoundCylinder{1, 2}), v);
  CHECK(cyl.rH <= 1e-3);
  CHECK(cyl.rV <= 1e-3);
}

TEST_CASE("simons identity cancels in closed form") {
  CHECK(simons_identity_residual(make_catalog(Sphere{2})) <= 1e-8);
  CHECK(simons_identity_residual(make_catalog(RoundCylinder{1, 2})) <= 1e-8);
  CHECK(simons_identity_residual(plane(6.0, 48)) <= 1e-8);
}

TEST_CASE("drift operator reproduces the Ornstein-Uhlenbeck eigenfunctions on the plane") {
  auto sup_in_ball = [](int res, int degree) {
    const SampledHypersurface s = plane(8.0, res);
    Vec f(s.sample_count());
    for (int i = 0; i < s.sample_count(); ++i)
      f[i] = degree == 1 ? s.positions(i, 0) : s.positions(i, 0) * s.positions(i, 0);
    const ScalarField d = drift_apply(s, f);
    double e = 0.0;
    for (int i = 0; i < s.sample_count(); ++i) {
      if (!d.valid[i] || s.positions.row(i).norm() > 4.0) continue;
      const double exact = degree == 1 ? -0.5 * f[i] : 2.0 - f[i];
      e = std::max(e, std::abs(d.values[i] - exact));
    }
    return e;
  };
  for (int degree : {1, 2}) {
    const double coarse = sup_in_ball(16, degree);
    const double fine = sup_in_ball(32, degree);
    CHECK(fine <= 0.25);
    CHECK(((coarse <= 1e-10 && fine <= 1e-10) || coarse / fine >= 3.0));
  }
}

TEST_CASE("stability operator sends constants to A^2 + 1/2 times them") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 32, 4.0});
  const ScalarField r = stability_apply(s, Vec::Ones(s.sample_count()));
  for (int i = 0; i < s.sample_count(); ++i) {
    if (!r.valid[i]) continue;
    CHECK(std::abs(r.values[i] - 1.0) <= 1e-10);  // (1/2 + 1/2) * 1
  }
}

TEST_CASE("sphere spectrum: -1 simple with constant eigenfield, then -1/2 thrice") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 32, 4.0});
  const SpectralResult r = first_eigenvalue(s, 10.0, 5);
  REQUIRE(r.eigenvalues.size() == 5);
  CHECK(std::abs(r.eigenvalues[0] + 1.0) <= 1e-3);
  for (int j = 1; j <= 3; ++j) CHECK(std::abs(r.eigenvalues[j] + 0.5) <= 1e-2);
  CHECK(r.eigenvalues[4] >= -0.2);  // next band is +1/2, well separated
  // ground state is the constant function
  const Vec phi = r.eigenfields.col(0);
  const double mean = phi.mean();
  CHECK((phi.array() - mean).abs().maxCoeff() <= 1e-6 * std::abs(mean));
  for (int j = 0; j < r.residual_norms.size(); ++j) CHECK(r.residual_norms[j] <= 1e-7);
  CHECK(r.tol_disc == r.h);
}

TEST_CASE("plane in B_8: first eigenvalue sits just above -1/2") {
  const SpectralResult r = first_eigenvalue(plane(8.0, 32), 8.0, 1);
  CHECK(r.eigenvalues[0] >= -0.5);  // strict: Rayleigh from above, potential is exactly 1/2
  CHECK(r.eigenvalues[0] <= -0.40);
}

TEST_CASE("plane eigenvalue is nonincreasing in the ball radius") {
  const SampledHypersurface s = plane(8.0, 32);
  double prev = 1e9;
  for (double R : {3.0, 4.0, 5.0, 6.0}) {
    const double l1 = first_eigenvalue(s, R, 1).eigenvalues[0];
    CHECK(l1 <= prev + 1e-12);
    prev = l1;
  }
}

TEST_CASE("cylinder eigenvalue is nonincreasing in the ball radius") {
  const SampledHypersurface s = make_catalog(RoundCylinder{1, 2}, CatalogOptions{12.0, 24, 4.0});
  double prev = 1e9;
  for (double R : {4.0, 6.0, 8.0, 10.0}) {
    const double l1 = first_eigenvalue(s, R, 1).eigenvalues[0];
    CHECK(l1 <= prev + 1e-12);
    prev = l1;
  }
}

TEST_CASE("random test functions never beat the first eigenvalue") {
  const SampledHypersurface s = plane(6.0, 32);
  const OperatorMatrices forms = assemble(s, 5.0);
  const SpectralResult r = solve_spectrum(forms, 1, "shrinker");
  const int D = static_cast<int>(forms.dof_sample.size());
  std::mt19937 rng(2026);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vec phi(D);
    for (int i = 0; i < D; ++i) phi[i] = gauss(rng);
    const double num = phi.dot((forms.K - forms.P) * phi);
    const double den = phi.dot(forms.M * phi);
    REQUIRE(den > 0.0);
    CHECK(num / den >= r.eigenvalues[0] - 1e-9);
  }
}

TEST_CASE("delta verdicts nest and expose their margin") {
  const SampledHypersurface s = plane(6.0, 32);
  const StabilityVerdict a = is_delta_stable(s, 5.0, 0.25);
  const StabilityVerdict b = is_delta_stable(s, 5.0, 0.5);
  if (a.verdict) CHECK(b.verdict);
  CHECK(std::abs(a.lambda1 - b.lambda1) <= 1e-12);
  CHECK(std::abs(a.margin - (a.lambda1 + 0.25)) <= 1e-12);
  // same decision the raw spectrum implies
  const SpectralResult r = first_eigenvalue(s, 5.0, 1);
  CHECK(a.verdict == (r.eigenvalues[0] >= -0.25 - r.tol_disc));
}

TEST_CASE("cylinder in B_10 is 1-stable but not 1/2-stable") {
  const SampledHypersurface s = make_catalog(RoundCylinder{1, 2}, CatalogOptions{12.0, 24, 4.0});
  const StabilityVerdict half = is_delta_stable(s, 10.0, 0.5);
  const StabilityVerdict one = is_delta_stable(s, 10.0, 1.0);
  CHECK_FALSE(half.verdict);
  CHECK(one.verdict);
  CHECK(half.lambda1 <= -0.5 - half.tol_disc);
  CHECK(one.lambda1 >= -1.0);
}

TEST_CASE("inflating the potential tenfold destroys stability, constants witness it") {
  const SampledHypersurface s = make_catalog(Sphere{2}, CatalogOptions{8.0, 16, 4.0});
  const int S = s.sample_count();
  const Vec potential = Vec::Constant(S, 10.0);  // 10 (|A|^2 + 1/2) on the sphere
  const OperatorMatrices forms =
      assemble_custom(s, std::vector<char>(S, 1), FormWeight::gaussian, potential);
  const SpectralResult r = solve_spectrum(forms, 1, "shrinker");
  // the constant function has Rayleigh quotient exactly -10
  const int D = static_cast<int>(forms.dof_sample.size());
  const Vec ones = Vec::Ones(D);
  const double quotient = ones.dot((forms.K - forms.P) * ones) / ones.dot(forms.M * ones);
  CHECK(std::abs(quotient + 10.0) <= 1e-10);
  CHECK(r.eigenvalues[0] <= -10.0 + 1e-8);
  CHECK(r.eigenvalues[0] >= -10.0 - 1e-8);
}

TEST_CASE("dense solver refuses oversized problems") {
  CHECK_THROWS_AS((void)first_eigenvalue(plane(8.0, 128), 8.0, 1), std::runtime_error);
}

TEST_CASE("graphical certificate: tilted plane passes, sphere fails the hypothesis") {
  TiltedPlaneGraph tp;
  tp.normal = Vec::Unit(3, 2);
  tp.normal[0] = 0.3;
  const SampledHypersurface s = make_catalog(tp);
  const EstimateReport ok = graphical_stability_certificate(s, Vec::Unit(3, 2), 3.0, 50, 7);
  CHECK(ok.pass);
  CHECK(ok.hypothesis_status == "ok");

  const EstimateReport bad =
      graphical_stability_certificate(make_catalog(Sphere{2}), Vec::Unit(3, 2), 3.0, 50, 7);
  CHECK_FALSE(bad.pass);
  CHECK(bad.hypothesis_status != "ok");
}

TEST_CASE("seeded certificate runs are bitwise repeatable") {
  TiltedPlaneGraph tp;
  tp.normal = Vec::Unit(3, 2);
  tp.normal[0] = 0.2;
  const SampledHypersurface s = make_catalog(tp);
  const EstimateReport a = graphical_stability_certificate(s, Vec::Unit(3, 2), 3.0, 20, 11);
  const EstimateReport b = graphical_stability_certificate(s, Vec::Unit(3, 2), 3.0, 20, 11);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  const EstimateReport c = graphical_stability_certificate(s, Vec::Unit(3, 2), 3.0, 20, 12);
  CHECK(c.pass == a.pass);  // verdict independent of the seed
}
