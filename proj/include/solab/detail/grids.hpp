#pragma once

#include "solab/chart.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

// Grid helpers shared by the catalog builders and the rotationally symmetric
// lifts. Everything here is deterministic.
namespace solab {
namespace detail {

constexpr double kPi = 3.14159265358979323846;

// integral of sin^m over [a,b], by the standard reduction formula
inline double sin_power_integral(int m, double a, double b) {
  if (m == 0) return b - a;
  if (m == 1) return std::cos(a) - std::cos(b);
  const double boundary = (std::cos(a) * std::pow(std::sin(a), m - 1) -
                           std::cos(b) * std::pow(std::sin(b), m - 1));
  return (boundary + (m - 1) * sin_power_integral(m - 2, a, b)) / m;
}

// Midpoint grid of the unit k-sphere in hyperspherical coordinates.
// Polar angles alpha_1..alpha_{k-1} in (0,pi), azimuth alpha_k in [0,2pi).
// Cell measures are exact (the weight factorizes as prod sin^{k-i}(alpha_i)),
// so the total sums to |S^k| to roundoff and the polar caps carry their
// exact areas.
struct SphereGrid {
  std::vector<ChartAxis> axes;
  std::vector<std::vector<double>> node_coord;   // per axis, per index
  std::vector<std::vector<double>> cell_weight;  // per axis, per index
};

inline SphereGrid make_sphere_grid(int k, int res) {
  if (res < 4) throw std::invalid_argument("sphere resolution too small (need >= 4)");
  SphereGrid g;
  g.axes.resize(k);
  g.node_coord.resize(k);
  g.cell_weight.resize(k);
  for (int a = 0; a < k; ++a) {
    const bool azimuth = (a == k - 1);
    const int size = azimuth ? 2 * res : res;
    const double span = azimuth ? 2.0 * kPi : kPi;
    const double h = span / size;
    ChartAxis ax;
    ax.size = size;
    ax.spacing = h;
    ax.origin = 0.5 * h;
    if (azimuth)
      ax.topology = AxisTopology::periodic;
    else if (a == k - 2)
      ax.topology = AxisTopology::pole_wrap;
    else
      ax.topology = AxisTopology::line;
    g.axes[a] = ax;
    g.node_coord[a].resize(size);
    g.cell_weight[a].resize(size);
    const int sinpow = k - 1 - a;
    for (int i = 0; i < size; ++i) {
      g.node_coord[a][i] = ax.origin + i * h;
      g.cell_weight[a][i] = sin_power_integral(sinpow, i * h, (i + 1) * h);
    }
  }
  return g;
}

inline Vec sphere_embed(const std::vector<double>& angles) {
  const int k = static_cast<int>(angles.size());
  Vec w(k + 1);
  double sines = 1.0;
  for (int a = 0; a < k; ++a) {
    w[a] = sines * std::cos(angles[a]);
    sines *= std::sin(angles[a]);
  }
  w[k] = sines;
  return w;
}

inline std::vector<char> rim_mask_from_chart(const Chart& chart) {
  std::vector<char> mask(chart.sample_to_node.size(), 0);
  for (std::size_t s = 0; s < chart.sample_to_node.size(); ++s) {
    const auto mi = chart.multi_index(chart.sample_to_node[s]);
    for (int a = 0; a < chart.dim(); ++a) {
      if (chart.axes[a].topology != AxisTopology::line) continue;
      if (mi[a] == 0 || mi[a] == chart.axes[a].size - 1) {
        mask[s] = 1;
        break;
      }
    }
  }
  return mask;
}

// orthonormal basis of v-perp, deterministic (Householder of v)
inline Mat orthonormal_complement(const Vec& v) {
  const int d = static_cast<int>(v.size());
  Eigen::HouseholderQR<Mat> qr(v);
  Mat q = qr.householderQ();
  // first column of q is +-v; the rest span the complement
  if ((q.col(0) - v).norm() > 1.0) q = -q;
  return q.rightCols(d - 1);
}

}  // namespace detail
}  // namespace solab
