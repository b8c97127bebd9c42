#pragma once

#include "solab/report.hpp"
#include "solab/surface.hpp"

#include <optional>

namespace solab {

// Gaussian weight exp(-|x-x0|^2/(4 t0)) tabulated on a surface.
struct GaussianWeight {
  Vec center;
  double t0 = 1.0;
  Vec values;              // per sample
  double normalizer = 1.0; // (4 pi t0)^{-n/2}
};

GaussianWeight gaussian_weight(const SampledHypersurface& s, const Vec& center, double t0);

struct FunctionalValue {
  double value = 0.0;
  double tail_bound = 0.0;   // mass outside the sampled region, 0 when compact
  double region_radius = 0.0;
};

// sum of field * weight * dmu, no normalizer. For noncompact surfaces the tail
// beyond the sampled radius is bounded by the polynomial volume-growth
// estimate summed over dyadic annuli, scaled by sup |field|; this needs the
// caller's entropy bound.
FunctionalValue weighted_integral(const SampledHypersurface& s, const Vec& field,
                                  const GaussianWeight& w,
                                  std::optional<double> lambda0 = std::nullopt);

// (4 pi t0)^{-n/2} * weighted area
FunctionalValue f_functional(const SampledHypersurface& s, const Vec& x0, double t0,
                             std::optional<double> lambda0 = std::nullopt);

struct EntropyResult {
  double value = 0.0;
  Vec center;          // representative argmax
  double t0 = 1.0;
  bool flat_direction = false;  // argmax degenerate (plane-like)
  bool converged = true;
  double tail_bound = 0.0;
  unsigned evaluations = 0;
};

// sup of the F-functional over centers and scales: coarse grid over the
// dilated sample bounding box and log t0 in [-4,4], then Nelder-Mead in
// (x0, log t0) to parameter tolerance 1e-6.
EntropyResult entropy(const SampledHypersurface& s,
                      std::optional<double> lambda0_hint = std::nullopt);

// vol(B_r(p) cap Sigma) <= e^{-1/4} (4 pi)^{n/2} lambda0 r^n
EstimateReport volume_growth_certificate(const SampledHypersurface& s, const Vec& p,
                                         double r, double lambda0);

}  // namespace solab
