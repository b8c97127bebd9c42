#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace solab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Axis topology of a structured chart.
//   line:      ordinary bounded axis
//   periodic:  index wraps modulo size (angular coordinate)
//   pole_wrap: bounded axis whose end cells touch a rotation pole; stepping
//              past an end lands on the same ring, shifted half a period
//              along the unique periodic axis of the chart.
enum class AxisTopology { line, periodic, pole_wrap };

struct ChartAxis {
  int size = 0;
  double spacing = 0.0;  // chart-coordinate step between adjacent nodes
  double origin = 0.0;   // chart coordinate of node 0
  AxisTopology topology = AxisTopology::line;
};

// Structured n-grid connectivity. Samples are stored in node order; nodes
// removed by truncation map to -1.
struct Chart {
  std::vector<ChartAxis> axes;
  std::vector<int> node_to_sample;  // size prod(sizes); -1 where absent
  std::vector<int> sample_to_node;  // size = number of samples

  int dim() const { return static_cast<int>(axes.size()); }

  std::int64_t node_count() const {
    std::int64_t c = 1;
    for (const auto& a : axes) c *= a.size;
    return c;
  }

  std::int64_t linear_index(const std::vector<int>& mi) const {
    std::int64_t lin = 0;
    for (int a = 0; a < dim(); ++a) lin = lin * axes[a].size + mi[a];
    return lin;
  }

  std::vector<int> multi_index(std::int64_t lin) const {
    std::vector<int> mi(dim());
    for (int a = dim() - 1; a >= 0; --a) {
      mi[a] = static_cast<int>(lin % axes[a].size);
      lin /= axes[a].size;
    }
    return mi;
  }

  double coord(const std::vector<int>& mi, int axis) const {
    return axes[axis].origin + mi[axis] * axes[axis].spacing;
  }

  int periodic_axis() const {
    for (int a = 0; a < dim(); ++a)
      if (axes[a].topology == AxisTopology::periodic) return a;
    return -1;
  }

  // Neighbor node along `axis` in direction dir = +-1, or -1 if off-chart.
  std::int64_t neighbor_node(std::int64_t node, int axis, int dir) const {
    std::vector<int> mi = multi_index(node);
    const ChartAxis& ax = axes[axis];
    int i = mi[axis] + dir;
    if (i >= 0 && i < ax.size) {
      mi[axis] = i;
      return linear_index(mi);
    }
    switch (ax.topology) {
      case AxisTopology::line:
        return -1;
      case AxisTopology::periodic:
        mi[axis] = (i + ax.size) % ax.size;
        return linear_index(mi);
      case AxisTopology::pole_wrap: {
        int p = periodic_axis();
        if (p < 0) return -1;
        mi[axis] = (i < 0) ? 0 : ax.size - 1;
        mi[p] = (mi[p] + axes[p].size / 2) % axes[p].size;
        return linear_index(mi);
      }
    }
    return -1;
  }

  int neighbor_sample(int sample, int axis, int dir) const {
    std::int64_t node = neighbor_node(sample_to_node[sample], axis, dir);
    return node < 0 ? -1 : node_to_sample[static_cast<std::size_t>(node)];
  }

  bool full() const {
    for (int s : node_to_sample)
      if (s < 0) return false;
    return true;
  }

  void validate() const {
    if (axes.empty()) throw std::invalid_argument("chart has no axes");
    for (const auto& a : axes) {
      if (a.size < 2) throw std::invalid_argument("chart axis too small");
      if (!(a.spacing > 0.0)) throw std::invalid_argument("chart spacing must be positive");
    }
    int poles = 0, periodic = 0;
    for (const auto& a : axes) {
      if (a.topology == AxisTopology::pole_wrap) ++poles;
      if (a.topology == AxisTopology::periodic) ++periodic;
    }
    if (poles > 0 && periodic != 1)
      throw std::invalid_argument("pole_wrap axis requires exactly one periodic axis");
    if (poles > 0 && axes[periodic_axis()].size % 2 != 0)
      throw std::invalid_argument("pole_wrap requires even periodic axis size");
    if (static_cast<std::int64_t>(node_to_sample.size()) != node_count())
      throw std::invalid_argument("node_to_sample size mismatch");
  }

  // Identity maps for a hole-free chart with `count` nodes.
  static std::vector<int> identity_map(std::int64_t count) {
    std::vector<int> m(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) m[static_cast<std::size_t>(i)] = static_cast<int>(i);
    return m;
  }
};

}  // namespace solab
