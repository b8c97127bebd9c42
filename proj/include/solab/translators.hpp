#pragma once

#include "solab/report.hpp"
#include "solab/stability.hpp"
#include "solab/surface.hpp"

namespace solab {
namespace translators {

// Rotationally symmetric translator profile: u'' = (1+u'^2)(1 - (n-1) u'/r),
// u(0) = u'(0) = 0, integrated by RK4 with a series start. u is strictly
// convex with u''(0) = 1/n.
struct BowlProfile {
  int n = 2;
  double step = 0.0;
  Vec r;   // r[i] = i * step
  Vec u;
  Vec du;
};

BowlProfile bowl_solve(int n, double r_max, double step);

// Principal curvatures along the profile for the downward normal
// (u' omega, -1)/W, which makes H positive with H(0) = 1 on the bowl.
// u'' is recovered from the stored slopes by finite differences so the values
// measure the data, not the equation.
struct ProfileCurvature {
  Vec kappa_meridian;  // u'' / W^3
  Vec kappa_parallel;  // u' / (r W), multiplicity n-1, limit u''(0) at r = 0
  Vec H;               // kappa_meridian + (n-1) kappa_parallel
  Vec A2;
  Vec gradA2;          // arclength derivatives: k_m'^2 + 3(n-1) k_p'^2
};

ProfileCurvature profile_curvature(const BowlProfile& p);

// Rotationally symmetric lift: chart rows at midpoint radii (j+1/2) dr, so the
// tip is crossed by stencils (n = 2) instead of sampled. The profile is solved
// at half the row spacing and attached for closed-form geometry.
SampledHypersurface lift_bowl(const BowlProfile& p, int radial_rows);
SampledHypersurface lift_bowl(int n, const CatalogOptions& opts);

struct BowlSolution {
  BowlProfile profile;
  SampledHypersurface surface;
};

// profile + lifted surface in one call; radial_rows <= 0 picks the default
BowlSolution bowl_build(int n, double r_max, double step, int radial_rows = 0);

// e^{x_{n+1}} per sample; strictly positive
Vec translator_weight(const SampledHypersurface& s);

struct TranslatorResidual {
  Vec field;        // H + <e_{n+1}, nu> per sample
  double sup = 0.0; // over interior samples
};

TranslatorResidual translator_residual(const SampledHypersurface& s);

struct SimonsResidualReport {
  Vec field;                   // |L_T |A|^2 - 2|grad A|^2 + |A|^4|, NaN off stencils
  double sup = 0.0;            // over centered-stencil interior samples
  double sup_one_sided = 0.0;  // rows needing one-sided radial stencils
  int one_sided_count = 0;     // flagged lower accuracy
};

SimonsResidualReport translator_simons_residual(const SampledHypersurface& s);

// least m eigenvalues of the translator stability operator with Dirichlet
// condition outside horizontal radius region_radius and on the chart rim;
// quadratic form (|grad phi|^2 - |A|^2 phi^2) e^{x_{n+1}} against the
// e^{x_{n+1}} mass
SpectralResult translator_first_eigenvalue(const SampledHypersurface& s,
                                           double region_radius, int m = 1);

// measurement report: sup |A|, volume-ratio sup over an (x, r) grid, weight
// range, and whether sup |A| sits at the tip; not a derived-constant
// certificate (the uniform curvature bound's constant is existential)
EstimateReport translator_curvature_report(const SampledHypersurface& s, double lambda0);

// 1D reduction for the rotationally symmetric ground state on a bowl patch;
// cross-checks the surface eigensolve and covers n = 3 cheaply
double bowl_first_eigenvalue_radial(const BowlProfile& p, double region_radius);

}  // namespace translators
}  // namespace solab
