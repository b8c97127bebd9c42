#include "solab/translators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "solab/chart_ops.hpp"
#include "solab/detail/grids.hpp"
#include "solab/estimates.hpp"
#include "solab/geometry.hpp"

namespace solab {
namespace translators {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double profile_rhs(int n, double r, double v) {
  return (1.0 + v * v) * (1.0 - (n - 1) * v / r);
}
}  // namespace

BowlProfile bowl_solve(int n, double r_max, double step) {
  if (n < 2) throw std::invalid_argument("bowl needs dimension n >= 2");
  if (!(r_max > 0) || !(step > 0)) throw std::invalid_argument("bowl needs r_max > 0 and step > 0");
  if (step > r_max / 100.0 + 1e-12) throw std::invalid_argument("bowl step too large (need step <= r_max/100)");

  BowlProfile p;
  p.n = n;
  p.step = step;
  const int P = static_cast<int>(std::lround(r_max / step)) + 1;
  p.r.resize(P);
  p.u.resize(P);
  p.du.resize(P);
  for (int i = 0; i < P; ++i) p.r[i] = i * step;

  // series start u = r^2/(2n) + a4 r^4 on [0, 2 step], past the r = 0
  // singularity of the equation
  const double a4 = 1.0 / (n * n * n * (4.0 * n + 8.0));
  for (int i = 0; i <= 2 && i < P; ++i) {
    const double r = p.r[i];
    p.u[i] = r * r / (2.0 * n) + a4 * r * r * r * r;
    p.du[i] = r / n + 4.0 * a4 * r * r * r;
  }

  for (int i = 2; i + 1 < P; ++i) {
    const double r = p.r[i];
    double u = p.u[i], v = p.du[i];
    const double k1u = v, k1v = profile_rhs(n, r, v);
    const double k2u = v + 0.5 * step * k1v,
                 k2v = profile_rhs(n, r + 0.5 * step, v + 0.5 * step * k1v);
    const double k3u = v + 0.5 * step * k2v,
                 k3v = profile_rhs(n, r + 0.5 * step, v + 0.5 * step * k2v);
    const double k4u = v + step * k3v, k4v = profile_rhs(n, r + step, v + step * k3v);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(v) || std::abs(v) > 1e8)
      throw std::runtime_error("bowl slope blow-up before r_max; decrease the step");
    p.u[i + 1] = u;
    p.du[i + 1] = v;
  }
  return p;
}

ProfileCurvature profile_curvature(const BowlProfile& p) {
  const int P = static_cast<int>(p.r.size());
  const int n = p.n;
  const double h = p.step;
  ProfileCurvature c;
  c.kappa_meridian = Vec::Zero(P);
  c.kappa_parallel = Vec::Zero(P);
  c.H = Vec::Zero(P);
  c.A2 = Vec::Zero(P);
  c.gradA2 = Vec::Zero(P);

  // u' is odd in r, so the tip admits full centered stencils; the outer two
  // points fall back to lower order
  auto du_ext = [&](int q) { return q >= 0 ? p.du[q] : -p.du[-q]; };
  Vec ddu(P);
  for (int i = 0; i < P; ++i) {
    if (i + 2 < P)
      ddu[i] = (-du_ext(i + 2) + 8.0 * du_ext(i + 1) - 8.0 * du_ext(i - 1) + du_ext(i - 2)) / (12.0 * h);
    else if (i + 1 < P)
      ddu[i] = (du_ext(i + 1) - du_ext(i - 1)) / (2.0 * h);
    else
      ddu[i] = (p.du[i] - p.du[i - 1]) / h;
  }
  for (int i = 0; i < P; ++i) {
    const double w = std::sqrt(1.0 + p.du[i] * p.du[i]);
    c.kappa_meridian[i] = ddu[i] / (w * w * w);
    c.kappa_parallel[i] = (i == 0) ? ddu[0] : p.du[i] / (p.r[i] * w);
    c.H[i] = c.kappa_meridian[i] + (n - 1) * c.kappa_parallel[i];
    c.A2[i] = c.kappa_meridian[i] * c.kappa_meridian[i] +
              (n - 1) * c.kappa_parallel[i] * c.kappa_parallel[i];
  }
  auto km_ext = [&](int q) { return q >= 0 ? c.kappa_meridian[q] : c.kappa_meridian[-q]; };
  auto kp_ext = [&](int q) { return q >= 0 ? c.kappa_parallel[q] : c.kappa_parallel[-q]; };
  for (int i = 0; i < P; ++i) {
    double dm, dp;
    if (i + 2 < P) {
      dm = (-km_ext(i + 2) + 8.0 * km_ext(i + 1) - 8.0 * km_ext(i - 1) + km_ext(i - 2)) / (12.0 * h);
      dp = (-kp_ext(i + 2) + 8.0 * kp_ext(i + 1) - 8.0 * kp_ext(i - 1) + kp_ext(i - 2)) / (12.0 * h);
    } else if (i + 1 < P) {
      dm = (km_ext(i + 1) - km_ext(i - 1)) / (2.0 * h);
      dp = (kp_ext(i + 1) - kp_ext(i - 1)) / (2.0 * h);
    } else {
      dm = (c.kappa_meridian[i] - c.kappa_meridian[i - 1]) / h;
      dp = (c.kappa_parallel[i] - c.kappa_parallel[i - 1]) / h;
    }
    const double w = std::sqrt(1.0 + p.du[i] * p.du[i]);
    // arclength derivatives carry 1/W
    dm /= w;
    dp /= w;
    c.gradA2[i] = dm * dm + 3.0 * (n - 1) * dp * dp;
  }
  return c;
}

SampledHypersurface lift_bowl(const BowlProfile& p, int radial_rows) {
  const int n = p.n;
  const int P = static_cast<int>(p.r.size());
  const int rows = radial_rows;
  if (rows < 4) throw std::invalid_argument("bowl lift needs at least 4 radial rows");
  // chart rows sit at midpoint radii (j+1/2) dr with dr = 2 step; the last row
  // still needs a four-point profile halo for the curvature derivatives
  if (2 * rows + 3 > P - 1) throw std::invalid_argument("bowl profile too short for the requested rows");
  const double dr = 2.0 * p.step;

  SampledHypersurface s;
  s.n = n;
  ChartAxis radial;
  radial.size = rows;
  radial.spacing = dr;
  radial.origin = 0.5 * dr;
  radial.topology = (n == 2) ? AxisTopology::pole_wrap : AxisTopology::line;
  s.chart.axes.push_back(radial);

  const int ares = std::max(8, static_cast<int>(std::lround(
                                   detail::kPi / (n == 2 ? dr : 2.0 * dr))));
  detail::SphereGrid ang = detail::make_sphere_grid(n - 1, ares);
  for (const auto& ax : ang.axes) s.chart.axes.push_back(ax);

  const std::int64_t count = s.chart.node_count();
  s.positions.resize(count, n + 1);
  s.normals.resize(count, n + 1);
  s.area_weights.resize(count);
  s.boundary.assign(count, 0);
  for (std::int64_t node = 0; node < count; ++node) {
    const auto mi = s.chart.multi_index(node);
    const int j = mi[0];
    const int pi = 1 + 2 * j;
    const double r = p.r[pi];
    const double u = p.u[pi];
    const double du = p.du[pi];
    const double w = std::sqrt(1.0 + du * du);
    std::vector<double> angles(n - 1);
    double cellw = 1.0;
    for (int a = 0; a < n - 1; ++a) {
      angles[a] = ang.node_coord[a][mi[a + 1]];
      cellw *= ang.cell_weight[a][mi[a + 1]];
    }
    const Vec omega = detail::sphere_embed(angles);
    Vec x(n + 1);
    x.head(n) = r * omega;
    x[n] = u;
    s.positions.row(node) = x.transpose();
    Vec nu(n + 1);
    nu.head(n) = (du / w) * omega;
    nu[n] = -1.0 / w;
    s.normals.row(node) = nu.transpose();
    s.area_weights[node] = w * std::pow(r, n - 1) * dr * cellw;
    if (j == rows - 1) s.boundary[node] = 1;
  }
  s.chart.node_to_sample = Chart::identity_map(count);
  s.chart.sample_to_node = Chart::identity_map(count);

  auto pm = std::make_shared<ProfileMeta>();
  pm->r = p.r;
  pm->u = p.u;
  pm->du = p.du;
  pm->stride = 2;
  pm->row0 = 1;
  pm->radial_axis = 0;
  s.profile = pm;
  s.catalog = Bowl{n};
  s.compact = false;
  s.graphical = false;
  std::ostringstream os;
  os << "bowl{n=" << n << ",r_max=" << rows * dr << ",rows=" << rows << "}";
  s.source = os.str();
  s.validate();
  return s;
}

SampledHypersurface lift_bowl(int n, const CatalogOptions& opts) {
  const double r_max = opts.truncation_radius;
  const int rows = opts.resolution > 0 ? opts.resolution : (n == 2 ? 160 : 80);
  const double step = r_max / rows / 2.0;
  BowlProfile p = bowl_solve(n, r_max + 4.0 * step, step);
  return lift_bowl(p, rows);
}

BowlSolution bowl_build(int n, double r_max, double step, int radial_rows) {
  const int rows = radial_rows > 0
                       ? radial_rows
                       : std::max(4, static_cast<int>(std::floor(r_max / (2.0 * step))));
  BowlSolution out;
  out.profile = bowl_solve(n, rows * 2.0 * step + 4.0 * step, step);
  out.surface = lift_bowl(out.profile, rows);
  return out;
}

Vec translator_weight(const SampledHypersurface& s) {
  const int S = s.sample_count();
  Vec w(S);
  for (int i = 0; i < S; ++i) w[i] = std::exp(s.positions(i, s.n));
  return w;
}

TranslatorResidual translator_residual(const SampledHypersurface& s) {
  const GeometryFields g = compute_geometry(s);
  const int S = s.sample_count();
  TranslatorResidual out;
  out.field = Vec::Constant(S, kNaN);
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(g.H[i])) continue;
    out.field[i] = g.H[i] + s.normals(i, s.n);
  }
  for (int i = 0; i < S; ++i)
    if (std::isfinite(out.field[i]) && !s.boundary[i] && g.centered[i])
      out.sup = std::max(out.sup, std::abs(out.field[i]));
  return out;
}

SimonsResidualReport translator_simons_residual(const SampledHypersurface& s) {
  const GeometryFields g = compute_geometry(s);
  const StencilOps ops(s);
  const int S = s.sample_count();
  const Vec& A2 = g.normA2;
  const Vec driftA2 = ops.translator_drift(A2);

  SimonsResidualReport rep;
  rep.field = Vec::Constant(S, kNaN);
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(driftA2[i]) || !std::isfinite(g.gradA2[i])) continue;
    rep.field[i] = driftA2[i] + 2.0 * A2[i] * A2[i] - 2.0 * g.gradA2[i];
    if (g.centered[i]) rep.sup = std::max(rep.sup, std::abs(rep.field[i]));
  }

  // rows whose chart stencil is cut (the tip rows when the radial axis cannot
  // fold) get the one-dimensional radial reduction with one-sided differences
  if (s.profile) {
    const ProfileMeta& pm = *s.profile;
    const double dr = s.chart.axes[pm.radial_axis].spacing;
    const int rows = s.chart.axes[pm.radial_axis].size;
    auto row_of = [&](int i) { return s.chart.multi_index(s.chart.sample_to_node[i])[pm.radial_axis]; };
    // radial trace of |A|^2 on the chart rows (it is rotationally symmetric)
    Vec a2row = Vec::Constant(rows, kNaN);
    for (int i = 0; i < S; ++i) {
      const int j = row_of(i);
      if (!std::isfinite(a2row[j])) a2row[j] = A2[i];
    }
    for (int i = 0; i < S; ++i) {
      if (std::isfinite(rep.field[i]) || s.boundary[i]) continue;
      const int j = row_of(i);
      if (j + 2 >= rows) continue;
      const int pi = pm.row0 + pm.stride * j;
      const double r = pm.r[pi], du = pm.du[pi];
      const double w2 = 1.0 + du * du;
      // u'' from the profile, centered fourth order as elsewhere
      auto du_ext = [&](int q) { return q >= 0 ? pm.du[q] : -pm.du[-q]; };
      const double ddu =
          (-du_ext(pi + 2) + 8.0 * du_ext(pi + 1) - 8.0 * du_ext(pi - 1) + du_ext(pi - 2)) /
          (12.0 * (pm.r[1] - pm.r[0]));
      const double f0 = a2row[j], f1 = a2row[j + 1], f2 = a2row[j + 2];
      const double fp = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * dr);
      const double fpp = (f0 - 2.0 * f1 + f2) / (dr * dr);
      // Delta f + <e,grad f> for radial f on the lifted profile
      const double drift1d =
          fpp / w2 + fp * ((s.n - 1) / (r * w2) - du * ddu / (w2 * w2) + du / w2);
      rep.field[i] = drift1d + 2.0 * f0 * f0 - 2.0 * g.gradA2[i];
      rep.sup_one_sided = std::max(rep.sup_one_sided, std::abs(rep.field[i]));
      ++rep.one_sided_count;
    }
  }
  return rep;
}

SpectralResult translator_first_eigenvalue(const SampledHypersurface& s, double region_radius,
                                           int m) {
  const GeometryFields g = compute_geometry(s);
  const int S = s.sample_count();
  std::vector<char> mask(S, 0);
  for (int i = 0; i < S; ++i) {
    const double horiz = s.positions.row(i).head(s.n).norm();
    mask[i] = (horiz <= region_radius) && !s.boundary[i] && std::isfinite(g.normA2[i]);
  }
  OperatorMatrices forms = assemble_custom(s, mask, FormWeight::translator, g.normA2);
  forms.R = region_radius;
  SpectralResult res = solve_spectrum(forms, m, "translator");
  res.R = region_radius;
  return res;
}

EstimateReport translator_curvature_report(const SampledHypersurface& s, double lambda0) {
  const GeometryFields g = compute_geometry(s);
  const int S = s.sample_count();

  EstimateReport rep;
  rep.name = "translator-curvature";
  rep.surface = s.source;
  rep.certificate = false;

  double supA2 = 0.0, sup_horiz = 0.0;
  int arg = -1;
  double min_horiz = std::numeric_limits<double>::infinity();
  for (int i = 0; i < S; ++i) {
    const double horiz = s.positions.row(i).head(s.n).norm();
    min_horiz = std::min(min_horiz, horiz);
    if (!std::isfinite(g.normA2[i])) continue;
    if (g.normA2[i] > supA2) {
      supA2 = g.normA2[i];
      arg = i;
      sup_horiz = horiz;
    }
  }
  const double dr = s.chart.axes[0].spacing;
  const bool tip_attained = arg >= 0 && sup_horiz <= min_horiz + dr;

  // measured volume ratios over meridian centers and dyadic radii
  double ratio_sup = 0.0;
  const Vec ones = Vec::Ones(S);
  std::vector<double> radii = {1.0, 2.0, 4.0};
  double max_horiz = 0.0;
  for (int i = 0; i < S; ++i) max_horiz = std::max(max_horiz, s.positions.row(i).head(s.n).norm());
  int centers = 0;
  for (int c = 0; c < 8; ++c) {
    // walk up the profile: pick the first sample at each target horizontal radius
    const double target = max_horiz * (c + 0.5) / 8.0;
    int best = -1;
    double besterr = std::numeric_limits<double>::infinity();
    for (int i = 0; i < S; ++i) {
      const double err = std::abs(s.positions.row(i).head(s.n).norm() - target);
      if (err < besterr) {
        besterr = err;
        best = i;
      }
    }
    if (best < 0) continue;
    ++centers;
    for (double r : radii) {
      if (r > 0.5 * max_horiz) continue;
      const double vol = ball_integral(s, ones, s.position(best), r);
      ratio_sup = std::max(ratio_sup, vol / std::pow(r, s.n));
    }
  }

  const Vec wt = translator_weight(s);
  rep.lhs = ratio_sup;
  rep.rhs = lambda0;
  rep.add_constant("lambda0", lambda0, "volume ratio bound, caller supplied", "input");
  rep.set_param("sup_A2", supA2);
  rep.set_param("sup_absA", std::sqrt(supA2));
  rep.set_param("tip_attained", tip_attained ? 1.0 : 0.0);
  rep.set_param("volume_ratio_sup", ratio_sup);
  rep.set_param("weight_min", wt.minCoeff());
  rep.set_param("weight_max", wt.maxCoeff());
  rep.set_param("centers", centers);
  rep.notes = "measurement report; the uniform curvature bound's constant is existential";
  rep.finalize();
  return rep;
}

double bowl_first_eigenvalue_radial(const BowlProfile& p, double region_radius) {
  const ProfileCurvature c = profile_curvature(p);
  const int P = static_cast<int>(p.r.size());
  int last = 0;
  while (last + 1 < P && p.r[last + 1] <= region_radius) ++last;
  if (last < 8) throw std::invalid_argument("radial eigenvalue region too small");

  // P1 elements on [0, r_last]: free at r = 0, Dirichlet at the region edge.
  // Forms K = int phi'^2 e^u r^{n-1}/W, P = int |A|^2 phi^2 e^u r^{n-1} W,
  // M = int phi^2 e^u r^{n-1} W; coefficients interpolated linearly, 2-point
  // Gauss per element.
  const int dofs = last;  // nodes 0..last-1 (node `last` clamped)
  Mat K = Mat::Zero(dofs, dofs), PM = Mat::Zero(dofs, dofs), M = Mat::Zero(dofs, dofs);
  const double gq = 1.0 / std::sqrt(3.0);
  for (int e = 0; e < last; ++e) {
    const double h = p.r[e + 1] - p.r[e];
    for (int q = 0; q < 2; ++q) {
      const double t = 0.5 + 0.5 * (q == 0 ? -gq : gq);
      const double wq = 0.5 * h;
      auto lerp = [&](const Vec& f) { return (1.0 - t) * f[e] + t * f[e + 1]; };
      const double r = lerp(p.r);
      const double w = std::sqrt(1.0 + lerp(p.du) * lerp(p.du));
      const double coefK = std::exp(lerp(p.u)) * std::pow(r, p.n - 1) / w;
      const double coefM = std::exp(lerp(p.u)) * std::pow(r, p.n - 1) * w;
      const double coefP = lerp(c.A2) * coefM;
      const double shape[2] = {1.0 - t, t};
      const double dshape[2] = {-1.0 / h, 1.0 / h};
      const int idx[2] = {e, e + 1};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          if (idx[a] >= dofs || idx[b] >= dofs) continue;
          K(idx[a], idx[b]) += wq * coefK * dshape[a] * dshape[b];
          PM(idx[a], idx[b]) += wq * coefP * shape[a] * shape[b];
          M(idx[a], idx[b]) += wq * coefM * shape[a] * shape[b];
        }
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(K - PM, M);
  if (solver.info() != Eigen::Success) throw std::runtime_error("radial eigensolve failed");
  return solver.eigenvalues()[0];
}

}  // namespace translators
}  // namespace solab
