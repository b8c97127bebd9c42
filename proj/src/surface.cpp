#include "solab/surface.hpp"

#include "solab/detail/grids.hpp"
#include "solab/translators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace solab {

namespace {

using detail::kPi;
using detail::make_sphere_grid;
using detail::orthonormal_complement;
using detail::rim_mask_from_chart;
using detail::sphere_embed;
using detail::SphereGrid;

SampledHypersurface build_hyperplane(const Hyperplane& hp, const CatalogOptions& opts) {
  if (hp.normal.size() < 3) throw std::invalid_argument("hyperplane normal must live in R^{n+1}, n >= 2");
  const double nv = hp.normal.norm();
  if (!(nv > 0)) throw std::invalid_argument("hyperplane normal must be nonzero");
  const Vec v = hp.normal / nv;
  const int n = static_cast<int>(v.size()) - 1;
  const double R = opts.truncation_radius;
  if (!(R > 0)) throw std::invalid_argument("hyperplane needs a positive truncation radius");
  int cells = opts.resolution > 0 ? opts.resolution : std::max(8, static_cast<int>(std::lround(2.0 * R / 0.125)));
  const double h = 2.0 * R / cells;

  SampledHypersurface s;
  s.n = n;
  s.chart.axes.assign(n, ChartAxis{cells, h, -R + 0.5 * h, AxisTopology::line});
  const std::int64_t count = s.chart.node_count();
  s.positions.resize(count, n + 1);
  s.normals.resize(count, n + 1);
  s.area_weights.resize(count);
  Mat basis = orthonormal_complement(v);
  const double cellvol = std::pow(h, n);
  for (std::int64_t node = 0; node < count; ++node) {
    const auto mi = s.chart.multi_index(node);
    Vec x = hp.offset * v;
    for (int a = 0; a < n; ++a) x += s.chart.coord(mi, a) * basis.col(a);
    s.positions.row(node) = x.transpose();
    s.normals.row(node) = v.transpose();
    s.area_weights[node] = cellvol;
  }
  s.chart.node_to_sample = Chart::identity_map(count);
  s.chart.sample_to_node = Chart::identity_map(count);
  s.boundary = rim_mask_from_chart(s.chart);
  std::ostringstream os;
  os << "hyperplane{offset=" << hp.offset << ",R=" << R << "}";
  s.source = os.str();
  s.compact = false;
  s.graphical = true;
  Hyperplane stored = hp;
  stored.normal = v;
  s.catalog = stored;
  return s;
}

SampledHypersurface build_sphere(const Sphere& sp, const CatalogOptions& opts) {
  if (sp.n < 2) throw std::invalid_argument("sphere needs n >= 2");
  const int n = sp.n;
  const double R = std::sqrt(2.0 * n);
  int res = opts.resolution > 0 ? opts.resolution : (n == 2 ? 96 : 20);
  SphereGrid g = make_sphere_grid(n, res);

  SampledHypersurface s;
  s.n = n;
  s.chart.axes = g.axes;
  const std::int64_t count = s.chart.node_count();
  s.positions.resize(count, n + 1);
  s.normals.resize(count, n + 1);
  s.area_weights.resize(count);
  const double Rn = std::pow(R, n);
  std::vector<double> angles(n);
  for (std::int64_t node = 0; node < count; ++node) {
    const auto mi = s.chart.multi_index(node);
    double w = Rn;
    for (int a = 0; a < n; ++a) {
      angles[a] = g.node_coord[a][mi[a]];
      w *= g.cell_weight[a][mi[a]];
    }
    const Vec omega = sphere_embed(angles);
    s.positions.row(node) = (R * omega).transpose();
    s.normals.row(node) = omega.transpose();
    s.area_weights[node] = w;
  }
  s.chart.node_to_sample = Chart::identity_map(count);
  s.chart.sample_to_node = Chart::identity_map(count);
  s.boundary.assign(count, 0);
  std::ostringstream os;
  os << "sphere{n=" << n << "}";
  s.source = os.str();
  s.compact = true;
  s.graphical = false;
  s.catalog = sp;
  return s;
}

SampledHypersurface build_cylinder(const RoundCylinder& cy, const CatalogOptions& opts) {
  const int k = cy.k, n = cy.n;
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("cylinder needs n >= 2 and 1 <= k <= n-1");
  const double rk = std::sqrt(2.0 * k);
  const double R = opts.truncation_radius;
  if (!(R * R > 2.0 * k))
    throw std::invalid_argument("cylinder truncation radius must exceed sqrt(2k)");
  const double Z = std::sqrt(R * R - 2.0 * k);
  int res = opts.resolution > 0 ? opts.resolution : 64;
  SphereGrid g = make_sphere_grid(k, k == 1 ? res : std::max(4, res / 2));
  const double hz_target = 2.0 * kPi * rk / res;  // match the angular metric spacing
  const int nz = std::max(4, static_cast<int>(std::lround(2.0 * Z / hz_target)));
  const double hz = 2.0 * Z / nz;

  SampledHypersurface s;
  s.n = n;
  s.chart.axes = g.axes;
  for (int a = 0; a < n - k; ++a)
    s.chart.axes.push_back(ChartAxis{nz, hz, -Z + 0.5 * hz, AxisTopology::line});
  const std::int64_t count = s.chart.node_count();
  s.positions.resize(count, n + 1);
  s.normals.resize(count, n + 1);
  s.area_weights.resize(count);
  const double rkk = std::pow(rk, k);
  std::vector<double> angles(k);
  for (std::int64_t node = 0; node < count; ++node) {
    const auto mi = s.chart.multi_index(node);
    double w = rkk;
    for (int a = 0; a < k; ++a) {
      angles[a] = g.node_coord[a][mi[a]];
      w *= g.cell_weight[a][mi[a]];
    }
    w *= std::pow(hz, n - k);
    const Vec omega = sphere_embed(angles);
    Vec x = Vec::Zero(n + 1), nu = Vec::Zero(n + 1);
    x.head(k + 1) = rk * omega;
    nu.head(k + 1) = omega;
    for (int a = 0; a < n - k; ++a) x[k + 1 + a] = s.chart.coord(mi, k + a);
    s.positions.row(node) = x.transpose();
    s.normals.row(node) = nu.transpose();
    s.area_weights[node] = w;
  }
  s.chart.node_to_sample = Chart::identity_map(count);
  s.chart.sample_to_node = Chart::identity_map(count);
  s.boundary = rim_mask_from_chart(s.chart);
  std::ostringstream os;
  os << "cylinder{k=" << k << ",n=" << n << ",R=" << R << "}";
  s.source = os.str();
  s.compact = false;
  s.graphical = false;
  s.catalog = cy;
  return s;
}

}  // namespace

std::string catalog_name(const CatalogId& id) {
  struct V {
    std::string operator()(const Hyperplane&) const { return "hyperplane"; }
    std::string operator()(const Sphere&) const { return "sphere"; }
    std::string operator()(const RoundCylinder&) const { return "cylinder"; }
    std::string operator()(const TiltedPlaneGraph&) const { return "tilted-plane"; }
    std::string operator()(const Bowl&) const { return "bowl"; }
  };
  return std::visit(V{}, id);
}

SampledHypersurface make_graph(const GraphSpec& spec) {
  const int n = spec.n;
  if (n < 2) throw std::invalid_argument("graph patch needs n >= 2");
  if (spec.nodes_per_axis < 5) throw std::invalid_argument("graph grid too small (need >= 5 nodes per axis)");
  if (!(spec.half_width > 0)) throw std::invalid_argument("graph half width must be positive");

  Mat frame = spec.frame;
  if (frame.size() == 0) frame = Mat::Identity(n + 1, n + 1);
  if (frame.rows() != n + 1 || frame.cols() != n + 1)
    throw std::invalid_argument("graph frame must be (n+1)x(n+1)");
  Vec base = spec.base;
  if (base.size() == 0) base = Vec::Zero(n + 1);

  const int N = spec.nodes_per_axis;
  const double h = 2.0 * spec.half_width / (N - 1);

  SampledHypersurface s;
  s.n = n;
  s.chart.axes.assign(n, ChartAxis{N, h, -spec.half_width, AxisTopology::line});
  const std::int64_t count = s.chart.node_count();

  Vec heights(count);
  if (spec.height) {
    Vec p(n);
    for (std::int64_t node = 0; node < count; ++node) {
      const auto mi = s.chart.multi_index(node);
      for (int a = 0; a < n; ++a) p[a] = s.chart.coord(mi, a);
      heights[node] = spec.height(p);
    }
  } else if (spec.heights.size() == count) {
    heights = spec.heights;
  } else {
    throw std::invalid_argument("graph spec needs a height function or a full height vector");
  }
  if (!heights.allFinite()) throw std::invalid_argument("graph heights must be finite");

  s.chart.node_to_sample = Chart::identity_map(count);
  s.chart.sample_to_node = Chart::identity_map(count);
  s.positions.resize(count, n + 1);
  s.normals.resize(count, n + 1);
  s.area_weights.resize(count);

  // gradient of u by centered differences, one-sided on the rim
  auto grad_u = [&](std::int64_t node) {
    Vec du(n);
    const auto mi = s.chart.multi_index(node);
    for (int a = 0; a < n; ++a) {
      auto at = [&](int idx) {
        auto m2 = mi;
        m2[a] = idx;
        return heights[s.chart.linear_index(m2)];
      };
      const int i = mi[a];
      if (i > 0 && i < N - 1)
        du[a] = (at(i + 1) - at(i - 1)) / (2 * h);
      else if (i == 0)
        du[a] = (-3 * at(0) + 4 * at(1) - at(2)) / (2 * h);
      else
        du[a] = (3 * at(N - 1) - 4 * at(N - 2) + at(N - 3)) / (2 * h);
    }
    return du;
  };

  const double cellvol = std::pow(h, n);
  for (std::int64_t node = 0; node < count; ++node) {
    const auto mi = s.chart.multi_index(node);
    Vec x = base;
    for (int a = 0; a < n; ++a) x += s.chart.coord(mi, a) * frame.col(a);
    x += heights[node] * frame.col(n);
    s.positions.row(node) = x.transpose();
    const Vec du = grad_u(node);
    const double W = std::sqrt(1.0 + du.squaredNorm());
    Vec nu = frame.col(n);
    for (int a = 0; a < n; ++a) nu -= du[a] * frame.col(a);
    s.normals.row(node) = (nu / W).transpose();
    s.area_weights[node] = W * cellvol;  // sqrt(det(I + du du^T)) = W
  }
  s.boundary = rim_mask_from_chart(s.chart);
  s.source = spec.source;
  s.compact = false;
  s.graphical = true;
  GraphMeta meta;
  meta.frame = frame;
  meta.base = base;
  meta.heights = heights;
  meta.height_fn = spec.height;
  s.graph = meta;
  return s;
}

GraphSpec local_patch_spec(const CatalogId& id, const Vec& p, double half_width, int nodes_per_axis) {
  GraphSpec gs;
  gs.half_width = half_width;
  gs.nodes_per_axis = nodes_per_axis;
  if (std::holds_alternative<Sphere>(id)) {
    const int n = std::get<Sphere>(id).n;
    const double R = std::sqrt(2.0 * n);
    if (p.size() != n + 1 || std::abs(p.norm() - R) > 1e-8)
      throw std::invalid_argument("local patch center must lie on the sphere");
    if (!(half_width * std::sqrt(static_cast<double>(n)) < 0.9 * R))
      throw std::invalid_argument("local patch too wide for the sphere");
    const Vec nu = p / R;
    Mat frame(n + 1, n + 1);
    frame.leftCols(n) = orthonormal_complement(nu);
    frame.col(n) = nu;
    gs.n = n;
    gs.frame = frame;
    gs.base = p;
    gs.height = [R](const Vec& q) { return std::sqrt(R * R - q.squaredNorm()) - R; };
    gs.source = "sphere-patch";
    return gs;
  }
  if (std::holds_alternative<RoundCylinder>(id)) {
    const auto& cy = std::get<RoundCylinder>(id);
    const int n = cy.n, k = cy.k;
    const double rk = std::sqrt(2.0 * k);
    if (p.size() != n + 1 || std::abs(p.head(k + 1).norm() - rk) > 1e-8)
      throw std::invalid_argument("local patch center must lie on the cylinder");
    if (!(half_width * std::sqrt(static_cast<double>(k)) < 0.9 * rk))
      throw std::invalid_argument("local patch too wide for the cylinder");
    Vec nu = Vec::Zero(n + 1);
    nu.head(k + 1) = p.head(k + 1) / rk;
    Mat bs = orthonormal_complement(p.head(k + 1) / rk);
    Mat frame = Mat::Zero(n + 1, n + 1);
    for (int i = 0; i < k; ++i) frame.col(i).head(k + 1) = bs.col(i);
    for (int i = 0; i < n - k; ++i) frame(k + 1 + i, k + i) = 1.0;
    frame.col(n) = nu;
    gs.n = n;
    gs.frame = frame;
    gs.base = p;
    gs.height = [rk, k](const Vec& q) { return std::sqrt(rk * rk - q.head(k).squaredNorm()) - rk; };
    gs.source = "cylinder-patch";
    return gs;
  }
  if (std::holds_alternative<Hyperplane>(id)) {
    const auto& hp = std::get<Hyperplane>(id);
    const Vec v = hp.normal / hp.normal.norm();
    const int n = static_cast<int>(v.size()) - 1;
    if (p.size() != n + 1 || std::abs(v.dot(p) - hp.offset) > 1e-8)
      throw std::invalid_argument("local patch center must lie on the plane");
    Mat frame(n + 1, n + 1);
    frame.leftCols(n) = orthonormal_complement(v);
    frame.col(n) = v;
    gs.n = n;
    gs.frame = frame;
    gs.base = p;
    gs.height = [](const Vec&) { return 0.0; };
    gs.source = "plane-patch";
    return gs;
  }
  throw std::invalid_argument("local patches exist for spheres, cylinders, and planes");
}

SampledHypersurface make_catalog(const CatalogId& id, const CatalogOptions& opts) {
  SampledHypersurface s;
  if (std::holds_alternative<Hyperplane>(id)) {
    s = build_hyperplane(std::get<Hyperplane>(id), opts);
  } else if (std::holds_alternative<Sphere>(id)) {
    s = build_sphere(std::get<Sphere>(id), opts);
  } else if (std::holds_alternative<RoundCylinder>(id)) {
    s = build_cylinder(std::get<RoundCylinder>(id), opts);
  } else if (std::holds_alternative<TiltedPlaneGraph>(id)) {
    const auto& tp = std::get<TiltedPlaneGraph>(id);
    const int n = static_cast<int>(tp.normal.size()) - 1;
    if (n < 2) throw std::invalid_argument("tilted plane normal must live in R^{n+1}, n >= 2");
    if (!(tp.normal[n] > 0))
      throw std::invalid_argument("tilted plane must be graphical over the horizontal plane");
    Vec w = -tp.normal.head(n) / tp.normal[n];
    GraphSpec gs;
    gs.n = n;
    gs.half_width = opts.graph_half_width;
    gs.nodes_per_axis = opts.resolution > 0 ? opts.resolution : 65;
    gs.height = [w](const Vec& p) { return w.dot(p); };
    gs.source = "tilted-plane";
    s = make_graph(gs);
    TiltedPlaneGraph stored = tp;
    stored.normal = tp.normal / tp.normal.norm();
    s.catalog = stored;
  } else if (std::holds_alternative<Bowl>(id)) {
    const auto& bw = std::get<Bowl>(id);
    s = translators::lift_bowl(bw.n, opts);
  } else {
    throw std::invalid_argument("unknown catalog id");
  }
  s.validate();
  return s;
}

SampledHypersurface refine(const SampledHypersurface& surf, int factor) {
  if (factor < 2) throw std::invalid_argument("refine factor must be >= 2");
  if (surf.catalog) {
    CatalogOptions opts;
    // reconstruct construction options from the chart
    const CatalogId& id = *surf.catalog;
    if (std::holds_alternative<Sphere>(id)) {
      opts.resolution = surf.chart.axes[0].size * factor;
    } else if (std::holds_alternative<Hyperplane>(id)) {
      const auto& ax = surf.chart.axes[0];
      opts.truncation_radius = -ax.origin + 0.5 * ax.spacing;
      opts.resolution = ax.size * factor;
    } else if (std::holds_alternative<RoundCylinder>(id)) {
      const auto& cy = std::get<RoundCylinder>(id);
      const auto& axz = surf.chart.axes.back();
      const double Z = -axz.origin + 0.5 * axz.spacing;
      opts.truncation_radius = std::sqrt(Z * Z + 2.0 * cy.k);
      // the builder halves the angular resolution for k >= 2 and the k = 1
      // azimuth axis has size 2 res, so invert that here
      opts.resolution = (cy.k == 1 ? surf.chart.axes[0].size / 2 : surf.chart.axes[0].size * 2) * factor;
    } else if (std::holds_alternative<TiltedPlaneGraph>(id)) {
      const auto& ax = surf.chart.axes[0];
      opts.graph_half_width = -ax.origin;
      opts.resolution = (ax.size - 1) * factor + 1;
    } else if (std::holds_alternative<Bowl>(id)) {
      const auto& axr = surf.chart.axes[0];
      opts.truncation_radius = axr.size * axr.spacing;
      opts.resolution = axr.size * factor;
    }
    return make_catalog(id, opts);
  }
  if (surf.graph) {
    const auto& g = *surf.graph;
    const int N = surf.chart.axes[0].size;
    const int Nf = (N - 1) * factor + 1;
    GraphSpec gs;
    gs.n = surf.n;
    gs.half_width = -surf.chart.axes[0].origin;
    gs.nodes_per_axis = Nf;
    gs.frame = g.frame;
    gs.base = g.base;
    gs.source = surf.source;
    if (g.resolve_fn) {
      gs.heights = g.resolve_fn(2.0 * gs.half_width / (Nf - 1));
      SampledHypersurface out = make_graph(gs);
      out.graph->resolve_fn = g.resolve_fn;
      return out;
    }
    if (g.height_fn) {
      gs.height = g.height_fn;
      return make_graph(gs);
    }
    if (surf.n != 2) throw std::invalid_argument("interpolating refine implemented for n = 2 graphs only");
    // bicubic (Catmull-Rom) interpolation of the stored heights
    const double h = surf.chart.axes[0].spacing;
    const double lo = surf.chart.axes[0].origin;
    auto H = [&](int i, int j) {
      i = std::clamp(i, 0, N - 1);
      j = std::clamp(j, 0, N - 1);
      return g.heights[static_cast<std::int64_t>(i) * N + j];
    };
    auto cr = [](double pm1, double p0, double p1, double p2, double t) {
      return p0 + 0.5 * t * (p1 - pm1 + t * (2 * pm1 - 5 * p0 + 4 * p1 - p2 + t * (3 * (p0 - p1) + p2 - pm1)));
    };
    gs.heights.resize(static_cast<std::int64_t>(Nf) * Nf);
    for (int i = 0; i < Nf; ++i) {
      const double x = lo + i * (2.0 * gs.half_width / (Nf - 1));
      const double fi = (x - lo) / h;
      int i0 = std::min(static_cast<int>(std::floor(fi)), N - 2);
      const double ti = fi - i0;
      for (int j = 0; j < Nf; ++j) {
        const double y = lo + j * (2.0 * gs.half_width / (Nf - 1));
        const double fj = (y - lo) / h;
        int j0 = std::min(static_cast<int>(std::floor(fj)), N - 2);
        const double tj = fj - j0;
        double col[4];
        for (int d = -1; d <= 2; ++d)
          col[d + 1] = cr(H(i0 + d, j0 - 1), H(i0 + d, j0), H(i0 + d, j0 + 1), H(i0 + d, j0 + 2), tj);
        gs.heights[static_cast<std::int64_t>(i) * Nf + j] = cr(col[0], col[1], col[2], col[3], ti);
      }
    }
    return make_graph(gs);
  }
  throw std::invalid_argument("refine: surface has no analytic or graph description");
}

SampledHypersurface truncate(const SampledHypersurface& surf, double R) {
  if (!(R > 0)) throw std::invalid_argument("truncate needs R > 0");
  const int S = surf.sample_count();
  std::vector<int> keep(S, -1);
  int m = 0;
  for (int i = 0; i < S; ++i)
    if (surf.positions.row(i).norm() <= R) keep[i] = m++;
  if (m == 0) throw std::invalid_argument("truncate: no samples inside the requested ball");
  if (m == S) return surf;

  SampledHypersurface out;
  out.n = surf.n;
  out.positions.resize(m, surf.n + 1);
  out.normals.resize(m, surf.n + 1);
  out.area_weights.resize(m);
  out.boundary.assign(m, 0);
  out.chart.axes = surf.chart.axes;
  out.chart.node_to_sample.assign(surf.chart.node_to_sample.size(), -1);
  out.chart.sample_to_node.resize(m);
  for (int i = 0; i < S; ++i) {
    if (keep[i] < 0) continue;
    const int j = keep[i];
    out.positions.row(j) = surf.positions.row(i);
    out.normals.row(j) = surf.normals.row(i);
    out.area_weights[j] = surf.area_weights[i];
    out.boundary[j] = surf.boundary[i];
    const std::int64_t node = surf.chart.sample_to_node[i];
    out.chart.node_to_sample[static_cast<std::size_t>(node)] = j;
    out.chart.sample_to_node[j] = node;
  }
  // samples adjacent to a removed neighbor become boundary
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < out.chart.dim() && !out.boundary[j]; ++a) {
      for (int dir = -1; dir <= 1; dir += 2) {
        const std::int64_t nb = out.chart.neighbor_node(out.chart.sample_to_node[j], a, dir);
        if (nb < 0) continue;
        const int was = surf.chart.node_to_sample[static_cast<std::size_t>(nb)];
        if (was >= 0 && keep[was] < 0) {
          out.boundary[j] = 1;
          break;
        }
      }
    }
  }
  out.source = surf.source + "|B" + std::to_string(R);
  out.compact = false;
  out.graphical = surf.graphical;
  out.catalog = surf.catalog;
  out.graph = surf.graph;
  if (out.graph) {
    // chart holes invalidate re-sampling
    out.graph->height_fn = nullptr;
    out.graph->resolve_fn = nullptr;
  }
  out.profile = surf.profile;
  return out;
}

SampledHypersurface translated(const SampledHypersurface& surf, const Vec& shift) {
  if (shift.size() != surf.n + 1) throw std::invalid_argument("translation dimension mismatch");
  SampledHypersurface out = surf;
  out.positions.rowwise() += shift.transpose();
  out.catalog.reset();
  out.profile.reset();
  if (out.graph) out.graph->base += shift;
  out.source = surf.source + "|translated";
  return out;
}

std::vector<char> interior_mask(const SampledHypersurface& surf) {
  const int S = surf.sample_count();
  const int n = surf.chart.dim();
  std::vector<char> mask(S, 1);
  for (int s = 0; s < S; ++s) {
    if (surf.boundary[s]) {
      mask[s] = 0;
      continue;
    }
    // all Chebyshev-1 neighbors must exist
    std::vector<int> off(n, -1);
    bool ok = true;
    while (ok) {
      int cur = s;
      bool present = true;
      for (int a = 0; a < n && present; ++a) {
        for (int step = 0; step < std::abs(off[a]) && present; ++step) {
          cur = surf.chart.neighbor_sample(cur, a, off[a] > 0 ? 1 : -1);
          if (cur < 0) present = false;
        }
      }
      if (!present) {
        mask[s] = 0;
        break;
      }
      int a = 0;
      for (; a < n; ++a) {
        if (off[a] < 1) {
          ++off[a];
          break;
        }
        off[a] = -1;
      }
      if (a == n) break;
    }
  }
  return mask;
}

std::vector<char> deep_interior_mask(const SampledHypersurface& surf) {
  // test against the frozen interior mask; stripping in place would cascade
  const std::vector<char> inner = interior_mask(surf);
  std::vector<char> mask = inner;
  const int S = surf.sample_count();
  for (int s = 0; s < S; ++s) {
    if (!mask[s]) continue;
    for (int a = 0; a < surf.chart.dim() && mask[s]; ++a) {
      for (int dir = -1; dir <= 1; dir += 2) {
        const int n1 = surf.chart.neighbor_sample(s, a, dir);
        const int n2 = n1 < 0 ? -1 : surf.chart.neighbor_sample(n1, a, dir);
        if (n1 < 0 || n2 < 0 || !inner[n1]) {
          mask[s] = 0;
          break;
        }
      }
    }
  }
  return mask;
}

std::vector<int> samples_in_ball(const SampledHypersurface& surf, double R, const Vec& center) {
  std::vector<int> out;
  Vec c = center.size() ? center : Vec::Zero(surf.n + 1);
  for (int i = 0; i < surf.sample_count(); ++i)
    if ((surf.positions.row(i).transpose() - c).norm() <= R) out.push_back(i);
  return out;
}

void SampledHypersurface::validate() const {
  if (n < 2) throw std::invalid_argument("surface dimension must be >= 2");
  const int S = sample_count();
  if (S == 0) throw std::invalid_argument("surface has no samples");
  if (normals.rows() != S || area_weights.size() != S ||
      static_cast<int>(boundary.size()) != S ||
      static_cast<int>(chart.sample_to_node.size()) != S)
    throw std::invalid_argument("surface arrays have inconsistent sizes");
  if (positions.cols() != n + 1 || normals.cols() != n + 1)
    throw std::invalid_argument("ambient dimension mismatch");
  if (!positions.allFinite() || !normals.allFinite() || !area_weights.allFinite())
    throw std::invalid_argument("surface data must be finite");
  chart.validate();
  for (int i = 0; i < S; ++i) {
    if (std::abs(normals.row(i).norm() - 1.0) > 1e-12)
      throw std::invalid_argument("normals must be unit length");
    if (!(area_weights[i] > 0)) throw std::invalid_argument("area weights must be positive");
  }
}

}  // namespace solab
