#pragma once

#include "solab/chart.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace solab {

// ---- catalog identifiers ----------------------------------------------------

struct Hyperplane {
  Vec normal;           // unit after construction
  double offset = 0.0;  // signed distance of the plane from the origin
};

struct Sphere {
  int n = 2;  // dimension; radius is sqrt(2n)
};

struct RoundCylinder {
  int k = 1;  // sphere factor dimension, radius sqrt(2k)
  int n = 2;  // total dimension
};

struct TiltedPlaneGraph {
  Vec normal;  // graph direction; must have positive last component
};

struct Bowl {
  int n = 2;
};

using CatalogId = std::variant<Hyperplane, Sphere, RoundCylinder, TiltedPlaneGraph, Bowl>;

std::string catalog_name(const CatalogId& id);

// ---- auxiliary metadata ------------------------------------------------------

// Graph patches x = base + sum_i p_i b_i + u(p) v with orthonormal frame
// {b_1..b_n, v}. Heights are stored at the chart nodes; an optional analytic
// height function enables exact re-sampling on refinement.
struct GraphMeta {
  Mat frame;    // (n+1) x (n+1); columns b_1..b_n, v
  Vec base;     // offset point (usually 0)
  Vec heights;  // per sample
  std::function<double(const Vec&)> height_fn;  // optional, not serialized
  std::function<Vec(double)> resolve_fn;        // optional: h -> heights on refined grid
};

// Rotationally symmetric profiles r -> height. Stored densely (integration
// grid); chart rows of a lifted surface reference profile entries.
struct ProfileMeta {
  Vec r;      // radii, ascending, starting at 0
  Vec u;      // height
  Vec du;     // slope
  int stride = 1;             // chart row i uses profile index row0 + i*stride
  int row0 = 0;               // profile index of the first chart row
  int radial_axis = 0;        // chart axis that follows the profile
};

// ---- sampled hypersurface ----------------------------------------------------

// Discrete hypersurface in R^{n+1}: positions, unit normals, per-sample area
// weights (cell measures), a structured chart for stencils, and flags.
struct SampledHypersurface {
  int n = 0;  // intrinsic dimension
  Mat positions;       // S x (n+1)
  Mat normals;         // S x (n+1)
  Vec area_weights;    // S
  std::vector<char> boundary;  // chart-rim flag per sample
  Chart chart;
  std::string source;  // human-readable construction tag
  bool compact = false;
  bool graphical = false;  // <v,nu> > 0 for the stored graph direction
  std::optional<CatalogId> catalog;
  std::optional<GraphMeta> graph;
  std::shared_ptr<const ProfileMeta> profile;

  int sample_count() const { return static_cast<int>(positions.rows()); }
  int ambient_dim() const { return n + 1; }

  Vec position(int i) const { return positions.row(i).transpose(); }
  Vec normal(int i) const { return normals.row(i).transpose(); }
  double radius(int i) const { return positions.row(i).norm(); }

  void validate() const;
};

// ---- construction ------------------------------------------------------------

struct CatalogOptions {
  double truncation_radius = 8.0;  // for noncompact members
  int resolution = 0;              // 0 = per-member default
  double graph_half_width = 4.0;   // tilted plane patch half width
};

// All catalog members: spheres and cylinders are shrinkers scaled so that
// H = <x,nu>/2 with the outward normal; planes through the origin likewise.
SampledHypersurface make_catalog(const CatalogId& id, const CatalogOptions& opts = {});

struct GraphSpec {
  int n = 2;
  double half_width = 4.0;
  int nodes_per_axis = 65;
  Mat frame;  // optional; identity if empty
  Vec base;   // optional; zero if empty
  std::function<double(const Vec&)> height;  // evaluated at chart points p
  Vec heights;                               // used when no height function is given
  std::string source = "graph";
};

SampledHypersurface make_graph(const GraphSpec& spec);

// Fine graph patch of a catalog surface around an on-surface point p, using
// the exact local height function (sphere caps, cylinder walls, planes).
// Used by estimates that resolve scales far below the global sample spacing.
GraphSpec local_patch_spec(const CatalogId& id, const Vec& p, double half_width, int nodes_per_axis);

// Analytic or interpolated re-sampling at factor-times resolution (factor>=2).
SampledHypersurface refine(const SampledHypersurface& surf, int factor);

// Keep samples with |x| <= R; boundary flags are extended to samples within
// one grid cell of the cut. Composition law:
// truncate(truncate(S,R),R') == truncate(S,min(R,R')) as sample sets.
SampledHypersurface truncate(const SampledHypersurface& surf, double R);

// Rigid translation (drops catalog/closed-form tags; fields become stencil-based).
SampledHypersurface translated(const SampledHypersurface& surf, const Vec& shift);

// Interior masks. "interior" requires the full Chebyshev-1 neighborhood in the
// chart; "deep interior" additionally requires second neighbors along each
// axis, which is what sup-norm residual reports use.
std::vector<char> interior_mask(const SampledHypersurface& surf);
std::vector<char> deep_interior_mask(const SampledHypersurface& surf);

// Samples within the ambient ball B_R(center); center may be empty for 0.
std::vector<int> samples_in_ball(const SampledHypersurface& surf, double R, const Vec& center = Vec());

}  // namespace solab
