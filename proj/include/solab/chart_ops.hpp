#pragma once

#include "solab/surface.hpp"

namespace solab {

// Finite-difference machinery on the chart of a sampled hypersurface.
// The induced metric is recovered from centered differences of the positions;
// all operators act on per-sample scalar arrays. Samples without a full
// centered stencil (chart rim, truncation cuts) are excluded from results via
// the interior masks; one-sided variants are provided where an operation
// documents rim behaviour.
class StencilOps {
 public:
  explicit StencilOps(const SampledHypersurface& s);

  const SampledHypersurface& surface() const { return *s_; }
  int dim() const { return s_->chart.dim(); }

  // neighbor sample index along a chart axis, -1 when absent
  int neighbor(int sample, int axis, int dir) const;

  // centered stencil available in every axis / also at all first neighbors
  const std::vector<char>& interior() const { return interior_; }
  const std::vector<char>& deep_interior() const { return deep_interior_; }

  // per-sample metric data (n x n row-major blocks per sample)
  const Mat& tangents() const { return tangents_; }  // S x (n*(n+1))
  const Mat& metric() const { return g_; }           // S x (n*n)
  const Mat& metric_inv() const { return ginv_; }    // S x (n*n)
  const Vec& sqrt_det() const { return sqrtg_; }     // S

  // largest sample-to-neighbor ambient distance over interior samples; the
  // physical resolution h used in reported tolerances
  double spacing() const { return spacing_; }

  // centered first derivative along one chart axis (NaN off the stencil)
  Vec d1(const Vec& f, int axis) const;

  // centered second derivative: three-point along one axis, four-corner cross
  // stencil for distinct axes (NaN wherever the stencil is incomplete)
  Vec d2(const Vec& f, int a, int b) const;

  // true when the chart metric has off-diagonal entries beyond roundoff, so
  // divergence-form operators carry mixed terms and need the deep interior
  bool mixed_metric() const { return has_mixed_; }

  // ambient tangential gradient, one row per sample
  Mat tangent_gradient(const Vec& f) const;

  // g^{ab} d_a f d_b f
  Vec grad_norm2(const Vec& f) const;

  // divergence-form operator (1/(w sqrt g)) d_a (w sqrt g g^{ab} d_b f) with a
  // strictly positive per-sample weight w. Flux coefficients at half cells are
  // arithmetic means of the endpoint values of sqrt(g) g^{ab} and geometric
  // means of w, which annihilates constants exactly. Mixed terms use nested
  // centered differences and need the deep interior.
  Vec weighted_laplacian(const Vec& f, const Vec& w) const;

  Vec laplace_beltrami(const Vec& f) const;

  // drift operator: Delta f - <x, grad f>/2, equal to the rho-weighted
  // divergence form with rho = exp(-|x|^2/4)
  Vec drift(const Vec& f) const;

  // translator operator without the potential: Delta f + <e_{n+1}, grad f>,
  // the exp(x_{n+1})-weighted divergence form
  Vec translator_drift(const Vec& f) const;

  // Christoffel symbols of the discrete metric (first kind), then the full
  // covariant squared norm of the derivative of a symmetric 2-tensor given in
  // chart components b_{ab} (per-sample n*n blocks). Valid on deep interior.
  Vec covariant_tensor_grad2(const Mat& b) const;

 private:
  const SampledHypersurface* s_;
  std::vector<char> interior_, deep_interior_;
  Mat tangents_;
  Mat g_, ginv_;
  Vec sqrtg_;
  double spacing_ = 0.0;
  bool has_mixed_ = false;
};

}  // namespace solab
