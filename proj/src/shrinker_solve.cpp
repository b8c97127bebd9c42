#include "solab/shrinker_solve.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace solab {

namespace {

struct NewtonOutcome {
  Vec heights;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// interior-node PDE residual; u indexed with the last axis fastest, matching Chart
double pde_residual(const Vec& u, const std::vector<int>& mi, const std::vector<std::int64_t>& str,
                    int n, int N, double h, double halfw) {
  std::int64_t node = 0;
  for (int a = 0; a < n; ++a) node = node * N + mi[a];
  const double u0 = u[node];
  const double h2 = h * h;
  double lap = 0.0, w2 = 1.0, drift = 0.0, quas = 0.0;
  double du[8];
  for (int a = 0; a < n; ++a) {
    const double up = u[node + str[a]];
    const double um = u[node - str[a]];
    du[a] = (up - um) / (2.0 * h);
    lap += (up - 2.0 * u0 + um) / h2;
    w2 += du[a] * du[a];
    const double pa = -halfw + mi[a] * h;
    drift += pa * du[a];
    quas += du[a] * du[a] * (up - 2.0 * u0 + um) / h2;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double uab = (u[node + str[a] + str[b]] + u[node - str[a] - str[b]] -
                          u[node + str[a] - str[b]] - u[node - str[a] + str[b]]) /
                         (4.0 * h2);
      quas += 2.0 * du[a] * du[b] * uab;
    }
  return lap - quas / w2 + 0.5 * (u0 - drift);
}

NewtonOutcome newton_solve(const ShrinkerSolveOptions& opts, int N,
                           const std::function<double(const Vec&)>& rim) {
  const int n = opts.n;
  const double halfw = opts.half_width;
  const double h = 2.0 * halfw / (N - 1);

  std::int64_t count = 1;
  std::vector<std::int64_t> str(n);
  for (int a = n - 1; a >= 0; --a) {
    str[a] = count;
    count *= N;
  }

  // interior unknowns; rim nodes carry fixed Dirichlet data
  std::vector<std::int64_t> unknown_node;
  std::vector<std::int64_t> node_unknown(count, -1);
  Vec u(count);
  {
    std::vector<int> mi(n, 0);
    Vec p(n);
    for (std::int64_t node = 0; node < count; ++node) {
      bool interior = true;
      for (int a = 0; a < n; ++a) {
        p[a] = -halfw + mi[a] * h;
        if (mi[a] == 0 || mi[a] == N - 1) interior = false;
      }
      u[node] = rim(p);  // rim data on the boundary, initial guess inside
      if (interior) {
        node_unknown[node] = static_cast<std::int64_t>(unknown_node.size());
        unknown_node.push_back(node);
      }
      for (int a = n - 1; a >= 0; --a) {
        if (++mi[a] < N) break;
        mi[a] = 0;
      }
    }
  }
  const std::int64_t D = static_cast<std::int64_t>(unknown_node.size());

  // stencil offsets entering the residual: center, axis pairs, plane corners
  std::vector<std::int64_t> offsets;
  offsets.push_back(0);
  for (int a = 0; a < n; ++a) {
    offsets.push_back(str[a]);
    offsets.push_back(-str[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      offsets.push_back(str[a] + str[b]);
      offsets.push_back(str[a] - str[b]);
      offsets.push_back(-str[a] + str[b]);
      offsets.push_back(-str[a] - str[b]);
    }

  auto residual_at = [&](std::int64_t node) {
    std::vector<int> mi(n);
    std::int64_t rest = node;
    for (int a = n - 1; a >= 0; --a) {
      mi[a] = static_cast<int>(rest % N);
      rest /= N;
    }
    return pde_residual(u, mi, str, n, N, h, halfw);
  };

  NewtonOutcome out;
  Eigen::VectorXd F(D);
  for (int it = 0; it < opts.max_iterations; ++it) {
    double sup = 0.0;
    for (std::int64_t i = 0; i < D; ++i) {
      F[i] = residual_at(unknown_node[i]);
      sup = std::max(sup, std::abs(F[i]));
    }
    out.residual = sup;
    out.iterations = it;
    if (sup <= opts.newton_tol) {
      out.converged = true;
      break;
    }

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(D * offsets.size());
    for (std::int64_t i = 0; i < D; ++i) {
      const std::int64_t node = unknown_node[i];
      for (const std::int64_t off : offsets) {
        const std::int64_t j = node + off;
        const std::int64_t col = node_unknown[j];
        if (col < 0) continue;
        const double save = u[j];
        const double eps = 1e-6 * std::max(1.0, std::abs(save));
        u[j] = save + eps;
        const double fp = residual_at(node);
        u[j] = save - eps;
        const double fm = residual_at(node);
        u[j] = save;
        trips.emplace_back(static_cast<int>(i), static_cast<int>(col), (fp - fm) / (2.0 * eps));
      }
    }
    Eigen::SparseMatrix<double> J(D, D);
    J.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
    if (lu.info() != Eigen::Success) break;
    const Eigen::VectorXd delta = lu.solve(-F);
    if (!delta.allFinite()) break;
    for (std::int64_t i = 0; i < D; ++i) u[unknown_node[i]] += delta[i];
  }
  if (!out.converged) {
    double sup = 0.0;
    for (std::int64_t i = 0; i < D; ++i) sup = std::max(sup, std::abs(residual_at(unknown_node[i])));
    out.residual = sup;
    out.converged = sup <= opts.newton_tol;
  }
  out.heights = u;
  return out;
}

std::function<double(const Vec&)> rim_closure(const ShrinkerSolveOptions& opts) {
  if (opts.rim) return opts.rim;
  const double bend = opts.bend;
  return [bend](const Vec& p) {
    return bend * (p[0] * p[0] - p[1] * p[1]) / (1.0 + p.squaredNorm());
  };
}

}  // namespace

ShrinkerSolveResult solve_graph_shrinker(const ShrinkerSolveOptions& opts) {
  if (opts.n < 2 || opts.n > 4) throw std::invalid_argument("graph shrinker solve supports n in [2,4]");
  if (opts.nodes_per_axis < 5) throw std::invalid_argument("need >= 5 nodes per axis");
  if (!(opts.half_width > 0)) throw std::invalid_argument("half width must be positive");

  const auto rim = rim_closure(opts);
  const NewtonOutcome sol = newton_solve(opts, opts.nodes_per_axis, rim);

  GraphSpec gs;
  gs.n = opts.n;
  gs.half_width = opts.half_width;
  gs.nodes_per_axis = opts.nodes_per_axis;
  gs.heights = sol.heights;
  {
    std::ostringstream os;
    os << "shrinker-graph{n=" << opts.n << ",W=" << opts.half_width << ",N=" << opts.nodes_per_axis
       << "}";
    gs.source = os.str();
  }

  ShrinkerSolveResult result;
  result.surface = make_graph(gs);
  ShrinkerSolveOptions ropts = opts;
  ropts.rim = rim;
  result.surface.graph->resolve_fn = [ropts](double target_h) {
    const int N2 = static_cast<int>(std::lround(2.0 * ropts.half_width / target_h)) + 1;
    if (N2 < 5) throw std::invalid_argument("resolve spacing too coarse");
    return newton_solve(ropts, N2, ropts.rim).heights;
  };
  result.residual_sup = sol.residual;
  result.iterations = sol.iterations;
  result.converged = sol.converged;
  return result;
}

}  // namespace solab
