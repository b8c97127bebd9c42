#pragma once

#include "solab/geometry.hpp"
#include "solab/report.hpp"
#include "solab/surface.hpp"

namespace solab {

struct ScalarField {
  Vec values;                // NaN where not evaluated
  std::vector<char> valid;   // centered stencil backed the entry
  std::string label = "custom";
};

// Drift operator applied by stencils: Delta f - <x, grad f>/2.
ScalarField drift_apply(const SampledHypersurface& s, const Vec& field);

// Stability operator: drift + (|A|^2 + 1/2) f.
ScalarField stability_apply(const SampledHypersurface& s, const Vec& field);

struct IdentityResiduals {
  double rH = 0.0;  // sup | L H - H |
  double rV = 0.0;  // sup | L<v,nu> - <v,nu>/2 |
};

IdentityResiduals eigen_identity_residuals(const SampledHypersurface& s, const Vec& v);

// sup | drift(|A|^2) - (|A|^2 - 2|A|^4 + 2|grad A|^2) |
double simons_identity_residual(const SampledHypersurface& s);

// Quadratic forms of the Gaussian-weighted problem on interior samples of
// Sigma cap B_R: K = grad-grad, P = (|A|^2 + 1/2) mass, M = mass. Multilinear
// elements on chart cells, tensor 2-point Gauss quadrature; the Dirichlet
// condition zeroes samples outside B_R or on the chart rim.
struct OperatorMatrices {
  Mat K, P, M;
  std::vector<int> dof_sample;  // dof -> sample index
  double R = 0.0;
  double h = 0.0;  // physical resolution, also the reported tol_disc
};

// weight selection for the forms
enum class FormWeight { gaussian, translator };

OperatorMatrices assemble(const SampledHypersurface& s, double R,
                          FormWeight w = FormWeight::gaussian);

// same elements and quadrature, but with a caller-chosen admissible-sample mask
// and zeroth-order coefficient field (sampled at nodes, interpolated per cell)
OperatorMatrices assemble_custom(const SampledHypersurface& s,
                                 const std::vector<char>& dof_mask,
                                 FormWeight w, const Vec& potential);

struct SpectralResult {
  double R = 0.0;
  double h = 0.0;
  Vec eigenvalues;        // ascending eigenvalues of -L (or -translator op)
  Mat eigenfields;        // dofs x m, M-orthonormal
  std::vector<int> dof_sample;
  Vec residual_norms;     // ||(K - P) phi - lambda M phi|| in the M^{-1} norm
  double tol_disc = 0.0;
  std::string op = "shrinker";
};

// least m eigenvalues of -L with Dirichlet boundary; dense solve, interior
// size capped at 4000
SpectralResult first_eigenvalue(const SampledHypersurface& s, double R, int m = 1);
SpectralResult solve_spectrum(const OperatorMatrices& forms, int m, const std::string& op_label);

struct StabilityVerdict {
  bool verdict = false;
  double lambda1 = 0.0;
  double margin = 0.0;    // lambda1 + delta
  double tol_disc = 0.0;
  double R = 0.0;
  double delta = 0.0;
};

// verdict = (lambda1 >= -delta - tol_disc)
StabilityVerdict is_delta_stable(const SampledHypersurface& s, double R, double delta);

// graphical => 1/2-stable, certified two ways: the drift equation for
// h = log<v,nu> (an identity only on exact shrinkers, reported alongside) and
// the integrated inequality with seeded random bump test fields.
EstimateReport graphical_stability_certificate(const SampledHypersurface& s, const Vec& v,
                                               double R, int trials, unsigned seed = 2026);

}  // namespace solab
