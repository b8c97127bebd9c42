#include "solab/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "solab/chart_ops.hpp"

namespace solab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void init_fields(GeometryFields& G, const SampledHypersurface& s) {
  const int S = static_cast<int>(s.positions.rows());
  const int n = s.n;
  G.H = Vec::Constant(S, kNaN);
  G.shape_op = Mat::Constant(S, n * n, kNaN);
  G.normA2 = Vec::Constant(S, kNaN);
  G.gradA2 = Vec::Constant(S, kNaN);
  G.gradNormA2 = Vec::Constant(S, kNaN);
  G.radius = Vec::Zero(S);
  G.meanH_grad = Vec::Constant(S, kNaN);
  G.meanH_grad_bound = Vec::Zero(S);
  G.centered.assign(S, 0);
  for (int i = 0; i < S; ++i) G.radius[i] = s.positions.row(i).norm();
}

void finish_bound(GeometryFields& G) {
  const int S = static_cast<int>(G.H.size());
  for (int i = 0; i < S; ++i)
    G.meanH_grad_bound[i] =
        std::isfinite(G.normA2[i]) ? 0.5 * G.radius[i] * std::sqrt(std::max(0.0, G.normA2[i])) : kNaN;
}

// constant extension into samples whose stencils were incomplete; exact for the
// round catalog pieces, first order otherwise, always flagged
void fill_nan_from_neighbors(const StencilOps& ops, GeometryFields& G) {
  const int S = static_cast<int>(G.H.size());
  const int n = ops.dim();
  for (int pass = 0; pass < 5; ++pass) {
    bool changed = false;
    for (int i = 0; i < S; ++i) {
      for (int a = 0; a < n; ++a)
        for (int d = -1; d <= 1; d += 2) {
          const int nb = ops.neighbor(i, a, d);
          if (nb < 0) continue;
          auto pull = [&](Vec& f) {
            if (!std::isfinite(f[i]) && std::isfinite(f[nb])) {
              f[i] = f[nb];
              changed = true;
            }
          };
          pull(G.H);
          pull(G.normA2);
          pull(G.gradA2);
          pull(G.gradNormA2);
          pull(G.meanH_grad);
          if (!std::isfinite(G.shape_op(i, 0)) && std::isfinite(G.shape_op(nb, 0))) {
            G.shape_op.row(i) = G.shape_op.row(nb);
            changed = true;
          }
        }
    }
    if (!changed) break;
  }
}

// symmetric orthonormal-frame representative of the shape operator from chart
// blocks: S_E = L^{-1} b L^{-T} with g = L L^T
bool frame_shape(const Mat& g, const Mat& b, Mat& out) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) return false;
  Mat tmp = llt.matrixL().solve(b);
  out = llt.matrixL().solve(tmp.transpose()).transpose();
  out = 0.5 * (out + out.transpose());
  return true;
}

GeometryFields closed_form_fields(const SampledHypersurface& s) {
  GeometryFields G;
  init_fields(G, s);
  const int S = static_cast<int>(s.positions.rows());
  const int n = s.n;
  Vec diag = Vec::Zero(n);
  if (std::holds_alternative<Sphere>(*s.catalog)) {
    diag.setConstant(1.0 / std::sqrt(2.0 * n));
  } else if (std::holds_alternative<RoundCylinder>(*s.catalog)) {
    const int k = std::get<RoundCylinder>(*s.catalog).k;
    diag.head(k).setConstant(1.0 / std::sqrt(2.0 * k));
  }
  const double h = diag.sum();
  const double a2 = diag.squaredNorm();
  for (int i = 0; i < S; ++i) {
    G.H[i] = h;
    G.normA2[i] = a2;
    G.gradA2[i] = 0.0;
    G.gradNormA2[i] = 0.0;
    G.meanH_grad[i] = 0.0;
    Mat block = Mat::Zero(n, n);
    block.diagonal() = diag;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) G.shape_op(i, a * n + c) = block(a, c);
    G.centered[i] = 1;
  }
  G.method = "closed-form";
  finish_bound(G);
  return G;
}

GeometryFields graph_fields(const SampledHypersurface& s) {
  GeometryFields G;
  init_fields(G, s);
  const StencilOps ops(s);
  const int S = static_cast<int>(s.positions.rows());
  const int n = s.n;
  const Vec& u = s.graph->heights;
  const Chart& c = s.chart;

  // first derivatives, one-sided at the rim and flagged
  Mat du = Mat::Zero(S, n);
  Mat du_centered = Mat::Zero(S, n);
  for (int i = 0; i < S; ++i)
    for (int a = 0; a < n; ++a) {
      const double h = c.axes[a].spacing;
      const int ip = ops.neighbor(i, a, +1);
      const int im = ops.neighbor(i, a, -1);
      if (ip >= 0 && im >= 0) {
        du(i, a) = (u[ip] - u[im]) / (2.0 * h);
        du_centered(i, a) = 1.0;
      } else if (ip >= 0) {
        du(i, a) = (u[ip] - u[i]) / h;
      } else if (im >= 0) {
        du(i, a) = (u[i] - u[im]) / h;
      } else {
        du(i, a) = kNaN;
      }
    }

  // second derivatives: centered where available, else one-sided over du
  Mat b_chart = Mat::Constant(S, n * n, kNaN);
  std::vector<char> second_centered(S, 1);
  for (int a = 0; a < n; ++a) {
    const double ha = c.axes[a].spacing;
    Vec dcent = ops.d2(u, a, a);
    for (int b = a; b < n; ++b) {
      Vec val = (a == b) ? dcent : ops.d2(u, a, b);
      for (int i = 0; i < S; ++i) {
        double v = val[i];
        if (!std::isfinite(v)) {
          second_centered[i] = 0;
          // fall back to a one-sided outer difference of the first derivative
          const int ip = ops.neighbor(i, a, +1);
          const int im = ops.neighbor(i, a, -1);
          if (ip >= 0 && im >= 0)
            v = (du(ip, b) - du(im, b)) / (2.0 * ha);
          else if (ip >= 0)
            v = (du(ip, b) - du(i, b)) / ha;
          else if (im >= 0)
            v = (du(i, b) - du(im, b)) / ha;
        }
        b_chart(i, a * n + b) = v;
        b_chart(i, b * n + a) = v;
      }
    }
  }

  Vec W(S);
  for (int i = 0; i < S; ++i) {
    Vec grad = du.row(i).transpose();
    if (!grad.allFinite()) continue;
    const double w = std::sqrt(1.0 + grad.squaredNorm());
    W[i] = w;
    Mat g = Mat::Identity(n, n) + grad * grad.transpose();
    Mat b(n, n);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int bb = 0; bb < n; ++bb) {
        b(a, bb) = -b_chart(i, a * n + bb) / w;
        if (!std::isfinite(b(a, bb))) ok = false;
      }
    Mat se;
    if (!ok || !frame_shape(g, b, se)) continue;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb) G.shape_op(i, a * n + bb) = se(a, bb);
    G.H[i] = se.trace();
    G.normA2[i] = se.squaredNorm();
  }

  // chart components of the second fundamental form feed the covariant norm
  Mat bcomp(S, n * n);
  for (int i = 0; i < S; ++i)
    for (int e = 0; e < n * n; ++e)
      bcomp(i, e) = second_centered[i] ? -b_chart(i, e) / W[i] : kNaN;
  G.gradA2 = ops.covariant_tensor_grad2(bcomp);

  Vec normA(S);
  for (int i = 0; i < S; ++i) normA[i] = std::isfinite(G.normA2[i]) ? std::sqrt(std::max(0.0, G.normA2[i])) : kNaN;
  G.gradNormA2 = ops.grad_norm2(normA);
  Vec hgrad2 = ops.grad_norm2(G.H);
  for (int i = 0; i < S; ++i) G.meanH_grad[i] = std::isfinite(hgrad2[i]) ? std::sqrt(std::max(0.0, hgrad2[i])) : kNaN;

  for (int i = 0; i < S; ++i)
    G.centered[i] = second_centered[i] && ops.deep_interior()[i] && std::isfinite(G.gradA2[i]);
  fill_nan_from_neighbors(ops, G);
  G.method = "graph";
  finish_bound(G);
  return G;
}

GeometryFields profile_fields(const SampledHypersurface& s) {
  GeometryFields G;
  init_fields(G, s);
  const ProfileMeta& pm = *s.profile;
  const int S = static_cast<int>(s.positions.rows());
  const int n = s.n;
  const int P = static_cast<int>(pm.r.size());
  const double hp = pm.r[1] - pm.r[0];

  // u' is odd across the axis, curvatures are even; fourth order differences
  auto du_ext = [&](int q) { return q >= 0 ? pm.du[q] : -pm.du[-q]; };
  Vec km = Vec::Constant(P, kNaN), kp = Vec::Constant(P, kNaN);
  for (int p = 0; p + 2 < P; ++p) {
    const double ddu =
        (-du_ext(p + 2) + 8.0 * du_ext(p + 1) - 8.0 * du_ext(p - 1) + du_ext(p - 2)) / (12.0 * hp);
    const double w = std::sqrt(1.0 + pm.du[p] * pm.du[p]);
    km[p] = ddu / (w * w * w);
    kp[p] = (p == 0) ? ddu : pm.du[p] / (pm.r[p] * w);
  }
  auto km_ext = [&](int q) { return q >= 0 ? km[q] : km[-q]; };
  auto kp_ext = [&](int q) { return q >= 0 ? kp[q] : kp[-q]; };
  Vec dkm = Vec::Constant(P, kNaN), dkp = Vec::Constant(P, kNaN);
  for (int p = 0; p + 4 < P; ++p) {
    dkm[p] = (-km_ext(p + 2) + 8.0 * km_ext(p + 1) - 8.0 * km_ext(p - 1) + km_ext(p - 2)) / (12.0 * hp);
    dkp[p] = (-kp_ext(p + 2) + 8.0 * kp_ext(p + 1) - 8.0 * kp_ext(p - 1) + kp_ext(p - 2)) / (12.0 * hp);
  }

  const Chart& c = s.chart;
  for (int i = 0; i < S; ++i) {
    const int node = c.sample_to_node[i];
    const int j = c.multi_index(node)[pm.radial_axis];
    const int p = pm.row0 + pm.stride * j;
    if (p + 4 >= P || !std::isfinite(km[p])) continue;
    const double w = std::sqrt(1.0 + pm.du[p] * pm.du[p]);
    const double kmv = km[p], kpv = kp[p];
    G.H[i] = kmv + (n - 1) * kpv;
    G.normA2[i] = kmv * kmv + (n - 1) * kpv * kpv;
    Mat block = Mat::Zero(n, n);
    block(0, 0) = kmv;
    for (int a = 1; a < n; ++a) block(a, a) = kpv;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb) G.shape_op(i, a * n + bb) = block(a, bb);
    // arclength derivatives carry 1/W
    const double km_s = dkm[p] / w, kp_s = dkp[p] / w;
    G.gradA2[i] = km_s * km_s + 3.0 * (n - 1) * kp_s * kp_s;
    const double dA2_s = 2.0 * kmv * km_s + 2.0 * (n - 1) * kpv * kp_s;
    const double normA = std::sqrt(G.normA2[i]);
    G.gradNormA2[i] = normA > 0 ? (dA2_s / (2.0 * normA)) * (dA2_s / (2.0 * normA)) : 0.0;
    G.meanH_grad[i] = std::abs(km_s + (n - 1) * kp_s);
    G.centered[i] = 1;
  }
  G.method = "profile";
  finish_bound(G);
  return G;
}

GeometryFields stencil_fields(const SampledHypersurface& s) {
  GeometryFields G;
  init_fields(G, s);
  const StencilOps ops(s);
  const int S = static_cast<int>(s.positions.rows());
  const int n = s.n;
  const int m = n + 1;

  // b_ab = -<nu, d_a d_b x> from centered second differences of the positions
  Mat bcomp = Mat::Constant(S, n * n, kNaN);
  for (int a = 0; a < n; ++a)
    for (int bb = a; bb < n; ++bb) {
      std::vector<Vec> comp(m);
      for (int cc = 0; cc < m; ++cc) comp[cc] = ops.d2(s.positions.col(cc), a, bb);
      for (int i = 0; i < S; ++i) {
        double acc = 0.0;
        bool ok = true;
        for (int cc = 0; cc < m; ++cc) {
          if (!std::isfinite(comp[cc][i])) {
            ok = false;
            break;
          }
          acc += s.normals(i, cc) * comp[cc][i];
        }
        if (!ok) continue;
        bcomp(i, a * n + bb) = -acc;
        bcomp(i, bb * n + a) = -acc;
      }
    }

  for (int i = 0; i < S; ++i) {
    Mat g(n, n), b(n, n);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int bb = 0; bb < n; ++bb) {
        g(a, bb) = ops.metric()(i, a * n + bb);
        b(a, bb) = bcomp(i, a * n + bb);
        if (!std::isfinite(b(a, bb))) ok = false;
      }
    Mat se;
    if (!ok || !frame_shape(g, b, se)) continue;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb) G.shape_op(i, a * n + bb) = se(a, bb);
    G.H[i] = se.trace();
    G.normA2[i] = se.squaredNorm();
  }

  G.gradA2 = ops.covariant_tensor_grad2(bcomp);
  Vec normA(S);
  for (int i = 0; i < S; ++i) normA[i] = std::isfinite(G.normA2[i]) ? std::sqrt(std::max(0.0, G.normA2[i])) : kNaN;
  G.gradNormA2 = ops.grad_norm2(normA);
  Vec hgrad2 = ops.grad_norm2(G.H);
  for (int i = 0; i < S; ++i) G.meanH_grad[i] = std::isfinite(hgrad2[i]) ? std::sqrt(std::max(0.0, hgrad2[i])) : kNaN;

  for (int i = 0; i < S; ++i)
    G.centered[i] = ops.deep_interior()[i] && std::isfinite(G.gradA2[i]) && std::isfinite(G.normA2[i]);
  fill_nan_from_neighbors(ops, G);
  G.method = "stencil";
  finish_bound(G);
  return G;
}

}  // namespace

GeometryFields compute_geometry(const SampledHypersurface& s) {
  if (s.catalog &&
      (std::holds_alternative<Hyperplane>(*s.catalog) || std::holds_alternative<Sphere>(*s.catalog) ||
       std::holds_alternative<RoundCylinder>(*s.catalog)))
    return closed_form_fields(s);
  if (s.profile) return profile_fields(s);
  if (s.graph && s.graph->heights.size() == s.positions.rows()) return graph_fields(s);
  return stencil_fields(s);
}

void GeometryFields::check_consistency() const {
  const int S = static_cast<int>(H.size());
  const int n2 = static_cast<int>(shape_op.cols());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  auto fail = [](const std::string& what, int i, double a, double b) {
    std::ostringstream os;
    os << "geometry consistency: " << what << " at sample " << i << " (" << a << " vs " << b << ")";
    throw std::runtime_error(os.str());
  };
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(H[i]) || !std::isfinite(normA2[i])) continue;
    double tr = 0.0, fro = 0.0;
    for (int a = 0; a < n; ++a) {
      tr += shape_op(i, a * n + a);
      for (int b = 0; b < n; ++b) {
        fro += shape_op(i, a * n + b) * shape_op(i, a * n + b);
        if (std::abs(shape_op(i, a * n + b) - shape_op(i, b * n + a)) > 1e-10 * (1.0 + std::abs(shape_op(i, a * n + b))))
          fail("asymmetric shape operator", i, shape_op(i, a * n + b), shape_op(i, b * n + a));
      }
    }
    if (std::abs(tr - H[i]) > 1e-10 * (1.0 + std::abs(H[i]))) fail("trace mismatch", i, tr, H[i]);
    if (std::abs(fro - normA2[i]) > 1e-10 * (1.0 + normA2[i])) fail("norm mismatch", i, fro, normA2[i]);
    if (H[i] * H[i] > n * normA2[i] * (1.0 + 1e-10) + 1e-12) fail("trace bound", i, H[i] * H[i], n * normA2[i]);
    if (std::isfinite(gradNormA2[i]) && std::isfinite(gradA2[i]) &&
        gradNormA2[i] > gradA2[i] * (1.0 + 1e-6) + 1e-8)
      fail("Kato bound", i, gradNormA2[i], gradA2[i]);
    if (std::isfinite(meanH_grad[i]) && std::isfinite(gradA2[i]) &&
        meanH_grad[i] * meanH_grad[i] > n * gradA2[i] * (1.0 + 1e-6) + 1e-8)
      fail("mean curvature gradient bound", i, meanH_grad[i] * meanH_grad[i], n * gradA2[i]);
  }
}

ResidualField shrinker_residual(const SampledHypersurface& s, const GeometryFields& g) {
  const int S = static_cast<int>(s.positions.rows());
  ResidualField out;
  out.field = Vec::Constant(S, kNaN);
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(g.H[i])) continue;
    out.field[i] = g.H[i] - 0.5 * s.positions.row(i).dot(s.normals.row(i));
  }
  for (int i = 0; i < S; ++i)
    if (std::isfinite(out.field[i]) && !s.boundary[i] && g.centered[i])
      out.sup = std::max(out.sup, std::abs(out.field[i]));
  return out;
}

double linear_growth_constant(const SampledHypersurface& s, const GeometryFields& g, double R) {
  double best = 0.0;
  const int S = static_cast<int>(s.positions.rows());
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(g.normA2[i]) || g.radius[i] > R) continue;
    best = std::max(best, std::sqrt(std::max(0.0, g.normA2[i])) / (1.0 + g.radius[i]));
  }
  return best;
}

}  // namespace solab
