#include "solab/chart_ops.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace solab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// stepping past the end of a pole_wrap axis lands on the far side of the pole
bool crosses_pole(const Chart& c, std::int64_t node, int axis, int dir) {
  if (c.axes[axis].topology != AxisTopology::pole_wrap) return false;
  const auto mi = c.multi_index(node);
  return (dir < 0 && mi[axis] == 0) || (dir > 0 && mi[axis] == c.axes[axis].size - 1);
}
}

StencilOps::StencilOps(const SampledHypersurface& s) : s_(&s) {
  const Chart& c = s.chart;
  const int n = c.dim();
  const int S = static_cast<int>(s.positions.rows());
  if (static_cast<int>(s.boundary.size()) != S)
    throw std::invalid_argument("surface boundary flags out of sync");

  interior_.assign(S, 1);
  for (int i = 0; i < S; ++i) {
    if (s.boundary[i]) {
      interior_[i] = 0;
      continue;
    }
    for (int a = 0; a < n && interior_[i]; ++a)
      for (int d = -1; d <= 1; d += 2)
        if (neighbor(i, a, d) < 0) {
          interior_[i] = 0;
          break;
        }
  }
  deep_interior_.assign(S, 0);
  for (int i = 0; i < S; ++i) {
    if (!interior_[i]) continue;
    char deep = 1;
    for (int a = 0; a < n && deep; ++a)
      for (int d = -1; d <= 1; d += 2)
        if (!interior_[neighbor(i, a, d)]) {
          deep = 0;
          break;
        }
    deep_interior_[i] = deep;
  }

  const int m = n + 1;
  tangents_ = Mat::Zero(S, n * m);
  g_ = Mat::Zero(S, n * n);
  ginv_ = Mat::Zero(S, n * n);
  sqrtg_ = Vec::Zero(S);
  for (int i = 0; i < S; ++i) {
    Mat T(m, n);
    for (int a = 0; a < n; ++a) {
      const double h = c.axes[a].spacing;
      const int ip = neighbor(i, a, +1);
      const int im = neighbor(i, a, -1);
      Vec t = Vec::Zero(m);
      if (ip >= 0 && im >= 0)
        t = (s.positions.row(ip) - s.positions.row(im)).transpose() / (2.0 * h);
      else if (ip >= 0)
        t = (s.positions.row(ip) - s.positions.row(i)).transpose() / h;
      else if (im >= 0)
        t = (s.positions.row(i) - s.positions.row(im)).transpose() / h;
      T.col(a) = t;
      tangents_.row(i).segment(a * m, m) = t.transpose();
    }
    Mat G = T.transpose() * T;
    const double det = G.determinant();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g_(i, a * n + b) = G(a, b);
    if (det > 1e-300) {
      Mat Gi = G.inverse();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) ginv_(i, a * n + b) = Gi(a, b);
      sqrtg_[i] = std::sqrt(det);
    }
  }

  for (int i = 0; i < S; ++i) {
    if (!interior_[i]) continue;
    for (int a = 0; a < n; ++a)
      for (int d = -1; d <= 1; d += 2) {
        const int nb = neighbor(i, a, d);
        const double len = (s.positions.row(nb) - s.positions.row(i)).norm();
        if (len > spacing_) spacing_ = len;
      }
  }

  // off-diagonal metric beyond roundoff means the divergence form needs the
  // nested mixed-term stencils
  double diag_scale = 0.0, off_max = 0.0;
  for (int i = 0; i < S; ++i) {
    if (!interior_[i]) continue;
    for (int a = 0; a < n; ++a) {
      diag_scale = std::max(diag_scale, std::abs(g_(i, a * n + a)));
      for (int b = a + 1; b < n; ++b) off_max = std::max(off_max, std::abs(g_(i, a * n + b)));
    }
  }
  has_mixed_ = off_max > 1e-12 * diag_scale;
}

int StencilOps::neighbor(int sample, int axis, int dir) const {
  const Chart& c = s_->chart;
  const int node = c.sample_to_node[sample];
  const int nb = c.neighbor_node(node, axis, dir);
  if (nb < 0) return -1;
  // a flagged end row of a pole-folded axis is a cut rim, not a pole; the fold
  // target on the far side is bogus there
  if (c.axes[axis].topology == AxisTopology::pole_wrap && s_->boundary[sample]) {
    const auto mi = c.multi_index(node);
    if ((mi[axis] == 0 && dir < 0) || (mi[axis] == c.axes[axis].size - 1 && dir > 0)) return -1;
  }
  return c.node_to_sample[nb];
}

Vec StencilOps::d1(const Vec& f, int axis) const {
  const int S = static_cast<int>(f.size());
  const double h = s_->chart.axes[axis].spacing;
  Vec out = Vec::Constant(S, kNaN);
  for (int i = 0; i < S; ++i) {
    const int ip = neighbor(i, axis, +1);
    const int im = neighbor(i, axis, -1);
    if (ip >= 0 && im >= 0) out[i] = (f[ip] - f[im]) / (2.0 * h);
  }
  return out;
}

Vec StencilOps::d2(const Vec& f, int a, int b) const {
  const int S = static_cast<int>(f.size());
  const double ha = s_->chart.axes[a].spacing;
  Vec out = Vec::Constant(S, kNaN);
  if (a == b) {
    for (int i = 0; i < S; ++i) {
      const int ip = neighbor(i, a, +1);
      const int im = neighbor(i, a, -1);
      if (ip >= 0 && im >= 0) out[i] = (f[ip] - 2.0 * f[i] + f[im]) / (ha * ha);
    }
    return out;
  }
  const double hb = s_->chart.axes[b].spacing;
  for (int i = 0; i < S; ++i) {
    const int ip = neighbor(i, a, +1);
    const int im = neighbor(i, a, -1);
    if (ip < 0 || im < 0) continue;
    const int pp = neighbor(ip, b, +1), pm = neighbor(ip, b, -1);
    const int mp = neighbor(im, b, +1), mm = neighbor(im, b, -1);
    if (pp < 0 || pm < 0 || mp < 0 || mm < 0) continue;
    out[i] = (f[pp] - f[pm] - f[mp] + f[mm]) / (4.0 * ha * hb);
  }
  return out;
}

Mat StencilOps::tangent_gradient(const Vec& f) const {
  const int n = dim();
  const int m = n + 1;
  const int S = static_cast<int>(f.size());
  std::vector<Vec> df(n);
  for (int a = 0; a < n; ++a) df[a] = d1(f, a);
  Mat out = Mat::Constant(S, m, kNaN);
  for (int i = 0; i < S; ++i) {
    if (!interior_[i]) continue;
    Vec v = Vec::Zero(m);
    for (int a = 0; a < n; ++a) {
      double ca = 0.0;
      for (int b = 0; b < n; ++b) ca += ginv_(i, a * n + b) * df[b][i];
      v += ca * tangents_.row(i).segment(a * m, m).transpose();
    }
    out.row(i) = v.transpose();
  }
  return out;
}

Vec StencilOps::grad_norm2(const Vec& f) const {
  const int n = dim();
  const int S = static_cast<int>(f.size());
  std::vector<Vec> df(n);
  for (int a = 0; a < n; ++a) df[a] = d1(f, a);
  Vec out = Vec::Constant(S, kNaN);
  for (int i = 0; i < S; ++i) {
    if (!interior_[i]) continue;
    double acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += ginv_(i, a * n + b) * df[a][i] * df[b][i];
    out[i] = acc;
  }
  return out;
}

Vec StencilOps::weighted_laplacian(const Vec& f, const Vec& w) const {
  const Chart& c = s_->chart;
  const int n = dim();
  const int S = static_cast<int>(f.size());
  Vec out = Vec::Constant(S, kNaN);

  Mat D(S, n);
  for (int i = 0; i < S; ++i)
    for (int a = 0; a < n; ++a) D(i, a) = sqrtg_[i] * ginv_(i, a * n + a);

  std::vector<Vec> df;
  if (has_mixed_) {
    df.resize(n);
    for (int b = 0; b < n; ++b) df[b] = d1(f, b);
  }

  for (int i = 0; i < S; ++i) {
    if (has_mixed_ ? !deep_interior_[i] : !interior_[i]) continue;
    const double base = w[i] * sqrtg_[i];
    const std::int64_t node = c.sample_to_node[i];
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      const double h = c.axes[a].spacing;
      const int ip = neighbor(i, a, +1);
      const int im = neighbor(i, a, -1);
      // a face sitting on a rotation pole carries no flux: the area density
      // collapses there, so the exact face coefficient is zero
      const double cp = crosses_pole(c, node, a, +1)
                            ? 0.0
                            : 0.5 * (D(i, a) + D(ip, a)) * std::sqrt(w[i] * w[ip]);
      const double cm = crosses_pole(c, node, a, -1)
                            ? 0.0
                            : 0.5 * (D(i, a) + D(im, a)) * std::sqrt(w[i] * w[im]);
      acc += (cp * (f[ip] - f[i]) - cm * (f[i] - f[im])) / (h * h);
      if (!has_mixed_) continue;
      for (int b = 0; b < n; ++b) {
        if (b == a) continue;
        const double fp = w[ip] * sqrtg_[ip] * ginv_(ip, a * n + b) * df[b][ip];
        const double fm = w[im] * sqrtg_[im] * ginv_(im, a * n + b) * df[b][im];
        acc += (fp - fm) / (2.0 * h);
      }
    }
    out[i] = acc / base;
  }
  return out;
}

Vec StencilOps::laplace_beltrami(const Vec& f) const {
  return weighted_laplacian(f, Vec::Ones(f.size()));
}

Vec StencilOps::drift(const Vec& f) const {
  const int S = static_cast<int>(f.size());
  Vec w(S);
  for (int i = 0; i < S; ++i) w[i] = std::exp(-0.25 * s_->positions.row(i).squaredNorm());
  return weighted_laplacian(f, w);
}

Vec StencilOps::translator_drift(const Vec& f) const {
  const int S = static_cast<int>(f.size());
  const int last = static_cast<int>(s_->positions.cols()) - 1;
  Vec w(S);
  for (int i = 0; i < S; ++i) w[i] = std::exp(s_->positions(i, last));
  return weighted_laplacian(f, w);
}

Vec StencilOps::covariant_tensor_grad2(const Mat& b) const {
  const int n = dim();
  const int S = static_cast<int>(b.rows());
  std::vector<Mat> dg(n), db(n);
  for (int cidx = 0; cidx < n; ++cidx) {
    dg[cidx] = Mat::Constant(S, n * n, kNaN);
    db[cidx] = Mat::Constant(S, n * n, kNaN);
    for (int e = 0; e < n * n; ++e) {
      dg[cidx].col(e) = d1(g_.col(e), cidx);
      db[cidx].col(e) = d1(b.col(e), cidx);
    }
  }

  Vec out = Vec::Constant(S, kNaN);
  std::vector<double> gam1(n * n * n), gam2(n * n * n), T(n * n * n), Tr(n * n * n);
  for (int i = 0; i < S; ++i) {
    if (!deep_interior_[i]) continue;
    bool ok = true;
    for (int cidx = 0; cidx < n && ok; ++cidx)
      for (int e = 0; e < n * n; ++e)
        if (!std::isfinite(db[cidx](i, e)) || !std::isfinite(dg[cidx](i, e))) {
          ok = false;
          break;
        }
    if (!ok) continue;

    // Christoffel symbols of the sampled metric, first then second kind
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int cc = 0; cc < n; ++cc)
          gam1[(a * n + bb) * n + cc] =
              0.5 * (dg[a](i, bb * n + cc) + dg[bb](i, a * n + cc) - dg[cc](i, a * n + bb));
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
          double acc = 0.0;
          for (int cc = 0; cc < n; ++cc) acc += ginv_(i, d * n + cc) * gam1[(a * n + bb) * n + cc];
          gam2[(d * n + a) * n + bb] = acc;
        }

    for (int cc = 0; cc < n; ++cc)
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
          double acc = db[cc](i, a * n + bb);
          for (int d = 0; d < n; ++d) {
            acc -= gam2[(d * n + cc) * n + a] * b(i, d * n + bb);
            acc -= gam2[(d * n + cc) * n + bb] * b(i, a * n + d);
          }
          T[(cc * n + a) * n + bb] = acc;
        }

    for (int cc = 0; cc < n; ++cc)
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
          double acc = 0.0;
          for (int c2 = 0; c2 < n; ++c2)
            for (int a2 = 0; a2 < n; ++a2)
              for (int b2 = 0; b2 < n; ++b2)
                acc += ginv_(i, cc * n + c2) * ginv_(i, a * n + a2) * ginv_(i, bb * n + b2) *
                       T[(c2 * n + a2) * n + b2];
          Tr[(cc * n + a) * n + bb] = acc;
        }

    double acc = 0.0;
    for (int e = 0; e < n * n * n; ++e) acc += T[e] * Tr[e];
    out[i] = acc;
  }
  return out;
}

}  // namespace solab
