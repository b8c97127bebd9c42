#pragma once

#include "solab/surface.hpp"

namespace solab {

// Newton solve of the graphical shrinker equation over [-W,W]^n:
//   Delta u - u_i u_j u_ij / W^2 + (u - p . grad u)/2 = 0
// (W^2 = 1 + |grad u|^2), with Dirichlet data g on the rim. The default data
// bend * (p1^2 - p2^2)/W^2 yields a small saddle-shaped non-flat shrinker.
struct ShrinkerSolveOptions {
  int n = 2;
  double half_width = 8.5;
  int nodes_per_axis = 75;
  double bend = 0.4;                     // rim amplitude scale
  std::function<double(const Vec&)> rim; // overrides bend when set
  double newton_tol = 1e-11;             // sup norm of the PDE residual
  int max_iterations = 30;
};

struct ShrinkerSolveResult {
  SampledHypersurface surface;  // graph with resolve-on-refine support
  double residual_sup = 0.0;    // interior PDE residual after the solve
  int iterations = 0;
  bool converged = false;
};

ShrinkerSolveResult solve_graph_shrinker(const ShrinkerSolveOptions& opts);

}  // namespace solab
