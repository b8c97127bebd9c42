#pragma once

#include "solab/surface.hpp"

namespace solab {

// Pointwise differential geometry of a sampled hypersurface. The shape
// operator is stored in an orthonormal tangent frame, so normA2 is exactly its
// squared Frobenius norm and H exactly its trace.
struct GeometryFields {
  Vec H;            // signed mean curvature, div of the stored normal
  Mat shape_op;     // S x (n*n), symmetric blocks in an orthonormal frame
  Vec normA2;       // |A|^2
  Vec gradA2;       // |grad A|^2, full covariant norm (discrete or closed form)
  Vec gradNormA2;   // |grad |A||^2
  Vec radius;       // |x|
  Vec meanH_grad;        // |grad H| by stencil
  Vec meanH_grad_bound;  // |x| |A| / 2, the bound shrinker arguments consume
  std::vector<char> centered;  // false where one-sided stencils filled in
  std::string method;          // closed-form | graph | profile | stencil

  void check_consistency() const;  // trace/Frobenius/Cauchy-Schwarz invariants
};

GeometryFields compute_geometry(const SampledHypersurface& s);

struct ResidualField {
  Vec field;        // NaN where not evaluated
  double sup = 0.0; // over interior samples
};

// r(x) = H - <x,nu>/2
ResidualField shrinker_residual(const SampledHypersurface& s, const GeometryFields& g);

// measured sup of |A|/(1+|x|) over samples in B_R
double linear_growth_constant(const SampledHypersurface& s, const GeometryFields& g, double R);

}  // namespace solab
