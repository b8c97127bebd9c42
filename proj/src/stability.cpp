#include "solab/stability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "solab/chart_ops.hpp"

namespace solab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kDofCap = 4000;

// portable uniform in [0,1) straight from the generator words
double unit_uniform(std::mt19937& rng) {
  return rng() * (1.0 / 4294967296.0);
}
}  // namespace

ScalarField drift_apply(const SampledHypersurface& s, const Vec& field) {
  const StencilOps ops(s);
  ScalarField out;
  out.values = ops.drift(field);
  out.label = "drift";
  out.valid.assign(out.values.size(), 0);
  for (int i = 0; i < out.values.size(); ++i) out.valid[i] = std::isfinite(out.values[i]);
  return out;
}

ScalarField stability_apply(const SampledHypersurface& s, const Vec& field) {
  const GeometryFields g = compute_geometry(s);
  ScalarField out = drift_apply(s, field);
  out.label = "stability";
  for (int i = 0; i < out.values.size(); ++i) {
    if (!out.valid[i] || !std::isfinite(g.normA2[i])) {
      out.values[i] = kNaN;
      out.valid[i] = 0;
      continue;
    }
    out.values[i] += (g.normA2[i] + 0.5) * field[i];
  }
  return out;
}

IdentityResiduals eigen_identity_residuals(const SampledHypersurface& s, const Vec& v) {
  if (v.size() != s.ambient_dim()) throw std::invalid_argument("direction dimension mismatch");
  const GeometryFields g = compute_geometry(s);
  const StencilOps ops(s);
  IdentityResiduals out;

  const Vec dH = ops.drift(g.H);
  const int S = s.sample_count();
  Vec vnu(S);
  for (int i = 0; i < S; ++i) vnu[i] = v.dot(s.normals.row(i).transpose());
  const Vec dV = ops.drift(vnu);
  for (int i = 0; i < S; ++i) {
    if (!g.centered[i]) continue;
    if (std::isfinite(dH[i])) {
      // L H = H  <=>  drift H + (|A|^2 + 1/2) H - H = 0
      const double r = dH[i] + (g.normA2[i] - 0.5) * g.H[i];
      out.rH = std::max(out.rH, std::abs(r));
    }
    if (std::isfinite(dV[i])) {
      // L <v,nu> = <v,nu>/2  <=>  drift <v,nu> + |A|^2 <v,nu> = 0
      const double r = dV[i] + g.normA2[i] * vnu[i];
      out.rV = std::max(out.rV, std::abs(r));
    }
  }
  return out;
}

double simons_identity_residual(const SampledHypersurface& s) {
  const GeometryFields g = compute_geometry(s);
  const StencilOps ops(s);
  const Vec dA2 = ops.drift(g.normA2);
  double sup = 0.0;
  for (int i = 0; i < s.sample_count(); ++i) {
    if (!g.centered[i] || !std::isfinite(dA2[i]) || !std::isfinite(g.gradA2[i])) continue;
    const double a2 = g.normA2[i];
    const double r = dA2[i] - (a2 - 2.0 * a2 * a2 + 2.0 * g.gradA2[i]);
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

OperatorMatrices assemble_custom(const SampledHypersurface& s, const std::vector<char>& dof_mask,
                                 FormWeight w, const Vec& potential) {
  const Chart& c = s.chart;
  const int n = c.dim();
  const int S = s.sample_count();
  if (static_cast<int>(dof_mask.size()) != S || potential.size() != S)
    throw std::invalid_argument("assembly mask/potential size mismatch");

  std::vector<int> sample_dof(S, -1);
  std::vector<int> dof_sample;
  for (int i = 0; i < S; ++i) {
    if (!dof_mask[i] || s.boundary[i]) continue;
    sample_dof[i] = static_cast<int>(dof_sample.size());
    dof_sample.push_back(i);
  }
  const int D = static_cast<int>(dof_sample.size());
  if (D == 0) throw std::invalid_argument("no admissible samples for the quadratic forms");
  if (D > kDofCap) {
    std::ostringstream os;
    os << "eigenproblem too large: " << D << " dofs (cap " << kDofCap << ")";
    throw std::runtime_error(os.str());
  }

  OperatorMatrices forms;
  forms.K = Mat::Zero(D, D);
  forms.P = Mat::Zero(D, D);
  forms.M = Mat::Zero(D, D);

  const int corners = 1 << n;
  const double gq = 0.5 / std::sqrt(3.0);
  const double qweight = std::pow(0.5, n);

  // cell ranges per axis; cells across a pole fold are skipped (the same tiny
  // Neumann hole for K, P and M, so structural eigenpairs survive)
  std::vector<int> range(n);
  for (int a = 0; a < n; ++a)
    range[a] = c.axes[a].topology == AxisTopology::periodic ? c.axes[a].size : c.axes[a].size - 1;

  std::vector<int> base(n, 0);
  std::vector<int> cell_sample(corners);
  Mat X(corners, n + 1);
  Vec pot_c(corners), Nq(corners);
  Mat dN(corners, n);
  std::vector<int> mi(n);

  while (true) {
    bool cell_ok = true;
    bool any_dof = false;
    for (int o = 0; o < corners && cell_ok; ++o) {
      for (int a = 0; a < n; ++a) {
        int idx = base[a] + ((o >> a) & 1);
        if (idx >= c.axes[a].size) idx -= c.axes[a].size;  // periodic wrap
        mi[a] = idx;
      }
      const std::int64_t node = c.linear_index(mi);
      const int smp = c.node_to_sample[node];
      if (smp < 0) {
        cell_ok = false;
        break;
      }
      cell_sample[o] = smp;
      if (sample_dof[smp] >= 0) any_dof = true;
    }

    if (cell_ok && any_dof) {
      for (int o = 0; o < corners; ++o) {
        X.row(o) = s.positions.row(cell_sample[o]);
        pot_c[o] = potential[cell_sample[o]];
      }
      for (int q = 0; q < corners; ++q) {
        // tensor 2-point Gauss on the unit cell
        double xi[8];
        for (int a = 0; a < n; ++a) xi[a] = 0.5 + (((q >> a) & 1) ? gq : -gq);
        for (int o = 0; o < corners; ++o) {
          double N = 1.0;
          for (int a = 0; a < n; ++a) N *= ((o >> a) & 1) ? xi[a] : 1.0 - xi[a];
          Nq[o] = N;
          for (int a = 0; a < n; ++a) {
            double d = ((o >> a) & 1) ? 1.0 : -1.0;
            for (int b = 0; b < n; ++b) {
              if (b == a) continue;
              d *= ((o >> b) & 1) ? xi[b] : 1.0 - xi[b];
            }
            dN(o, a) = d;
          }
        }
        const Mat J = X.transpose() * dN;  // (n+1) x n
        const Mat G = J.transpose() * J;
        const double detG = G.determinant();
        if (!(detG > 0)) continue;
        const Mat Gi = G.inverse();
        const Vec pos = X.transpose() * Nq;
        const double wq = (w == FormWeight::gaussian) ? std::exp(-0.25 * pos.squaredNorm())
                                                      : std::exp(pos[n]);
        const double potq = Nq.dot(pot_c);
        const double common = qweight * std::sqrt(detG) * wq;
        for (int a = 0; a < corners; ++a) {
          const int da = sample_dof[cell_sample[a]];
          if (da < 0) continue;
          for (int b = 0; b < corners; ++b) {
            const int db = sample_dof[cell_sample[b]];
            if (db < 0) continue;
            forms.K(da, db) += common * dN.row(a) * Gi * dN.row(b).transpose();
            forms.P(da, db) += common * potq * Nq[a] * Nq[b];
            forms.M(da, db) += common * Nq[a] * Nq[b];
          }
        }
      }
    }

    int a = 0;
    for (; a < n; ++a) {
      if (++base[a] < range[a]) break;
      base[a] = 0;
    }
    if (a == n) break;
  }

  // prune dofs that no complete cell supports (zero mass rows)
  std::vector<int> keep;
  for (int d = 0; d < D; ++d)
    if (forms.M(d, d) > 0) keep.push_back(d);
  if (static_cast<int>(keep.size()) < D) {
    const int D2 = static_cast<int>(keep.size());
    Mat K2(D2, D2), P2(D2, D2), M2(D2, D2);
    std::vector<int> ds2(D2);
    for (int i = 0; i < D2; ++i) {
      ds2[i] = dof_sample[keep[i]];
      for (int j = 0; j < D2; ++j) {
        K2(i, j) = forms.K(keep[i], keep[j]);
        P2(i, j) = forms.P(keep[i], keep[j]);
        M2(i, j) = forms.M(keep[i], keep[j]);
      }
    }
    forms.K.swap(K2);
    forms.P.swap(P2);
    forms.M.swap(M2);
    dof_sample.swap(ds2);
  }
  forms.dof_sample = dof_sample;

  const StencilOps ops(s);
  forms.h = ops.spacing();
  return forms;
}

OperatorMatrices assemble(const SampledHypersurface& s, double R, FormWeight w) {
  const GeometryFields g = compute_geometry(s);
  const int S = s.sample_count();
  std::vector<char> mask(S, 0);
  for (int i = 0; i < S; ++i)
    mask[i] = !s.boundary[i] && s.positions.row(i).norm() <= R && std::isfinite(g.normA2[i]);
  Vec pot = g.normA2;
  if (w == FormWeight::gaussian) pot.array() += 0.5;
  for (int i = 0; i < S; ++i)
    if (!std::isfinite(pot[i])) pot[i] = 0.0;  // masked out anyway
  int admissible = 0;
  for (int i = 0; i < S; ++i) admissible += mask[i] != 0;
  if (admissible < 10) throw std::invalid_argument("too few interior samples in B_R");
  OperatorMatrices forms = assemble_custom(s, mask, w, pot);
  forms.R = R;
  return forms;
}

SpectralResult solve_spectrum(const OperatorMatrices& forms, int m, const std::string& op_label) {
  const int D = static_cast<int>(forms.K.rows());
  if (D == 0) throw std::invalid_argument("empty quadratic forms");
  if (m < 1) throw std::invalid_argument("need m >= 1 eigenvalues");
  m = std::min(m, D);

  Mat A = forms.K - forms.P;
  A = 0.5 * (A + A.transpose()).eval();
  Mat M = 0.5 * (forms.M + forms.M.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(A, M);
  if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolve failed");

  SpectralResult res;
  res.R = forms.R;
  res.h = forms.h;
  res.tol_disc = forms.h;
  res.op = op_label;
  res.dof_sample = forms.dof_sample;
  res.eigenvalues = solver.eigenvalues().head(m);
  res.eigenfields = solver.eigenvectors().leftCols(m);

  Eigen::LLT<Mat> mllt(M);
  res.residual_norms = Vec::Zero(m);
  for (int k = 0; k < m; ++k) {
    const Vec r = A * res.eigenfields.col(k) - res.eigenvalues[k] * (M * res.eigenfields.col(k));
    res.residual_norms[k] = std::sqrt(std::max(0.0, r.dot(mllt.solve(r))));
  }
  return res;
}

SpectralResult first_eigenvalue(const SampledHypersurface& s, double R, int m) {
  return solve_spectrum(assemble(s, R, FormWeight::gaussian), m, "shrinker");
}

StabilityVerdict is_delta_stable(const SampledHypersurface& s, double R, double delta) {
  const SpectralResult res = first_eigenvalue(s, R, 1);
  StabilityVerdict v;
  v.lambda1 = res.eigenvalues[0];
  v.tol_disc = res.tol_disc;
  v.R = R;
  v.delta = delta;
  v.margin = v.lambda1 + delta;
  v.verdict = v.lambda1 >= -delta - v.tol_disc;
  return v;
}

EstimateReport graphical_stability_certificate(const SampledHypersurface& s, const Vec& v,
                                               double R, int trials, unsigned seed) {
  if (v.size() != s.ambient_dim()) throw std::invalid_argument("direction dimension mismatch");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  EstimateReport rep;
  rep.name = "graphical-stability";
  rep.surface = s.source;
  rep.seed = seed;

  const int S = s.sample_count();
  Vec vnu(S);
  double min_vnu = std::numeric_limits<double>::infinity();
  for (int i = 0; i < S; ++i) {
    vnu[i] = v.dot(s.normals.row(i).transpose());
    if (s.positions.row(i).norm() <= R) min_vnu = std::min(min_vnu, vnu[i]);
  }
  if (!(min_vnu > 0)) throw std::invalid_argument("not graphical: <v,nu> <= 0 in B_R");

  const GeometryFields g = compute_geometry(s);

  // route one: h = log<v,nu> solves drift h + |grad h|^2 + |A|^2 = 0 on exact
  // shrinkers; reported alongside, not gating
  double drift_id_sup = 0.0;
  {
    const StencilOps ops(s);
    Vec logv(S);
    for (int i = 0; i < S; ++i) logv[i] = vnu[i] > 0 ? std::log(vnu[i]) : kNaN;
    const Vec dh = ops.drift(logv);
    const Vec gh = ops.grad_norm2(logv);
    for (int i = 0; i < S; ++i) {
      if (!std::isfinite(dh[i]) || !std::isfinite(gh[i]) || !g.centered[i]) continue;
      if (s.positions.row(i).norm() > R) continue;
      drift_id_sup = std::max(drift_id_sup, std::abs(dh[i] + gh[i] + g.normA2[i]));
    }
  }

  // route two: seeded compactly supported bumps phi against the integrated
  // inequality  int |A|^2 phi^2 rho <= int |grad phi|^2 rho
  std::vector<char> mask(S, 0);
  for (int i = 0; i < S; ++i)
    mask[i] = !s.boundary[i] && s.positions.row(i).norm() <= R && std::isfinite(g.normA2[i]);
  Vec pot = g.normA2;
  for (int i = 0; i < S; ++i)
    if (!std::isfinite(pot[i])) pot[i] = 0.0;
  OperatorMatrices forms = assemble_custom(s, mask, FormWeight::gaussian, pot);
  forms.R = R;
  const int D = static_cast<int>(forms.dof_sample.size());
  std::mt19937 rng(seed);
  double min_ray = std::numeric_limits<double>::infinity();
  int accepted = 0, rejected = 0;
  int guard = 0;
  while (accepted < trials && ++guard < 50 * trials) {
    const int pick = static_cast<int>(unit_uniform(rng) * D) % D;
    const int ci = forms.dof_sample[pick];
    const Vec center = s.position(ci);
    const double room = R - center.norm();
    if (room < 2.0 * forms.h) {
      ++rejected;
      continue;
    }
    const double sigma = std::max(3.0 * forms.h, room * (0.25 + 0.5 * unit_uniform(rng)));
    Vec phi = Vec::Zero(D);
    for (int d = 0; d < D; ++d) {
      const double t2 = (s.position(forms.dof_sample[d]) - center).squaredNorm() / (sigma * sigma);
      if (t2 < 1.0) phi[d] = (1.0 - t2) * (1.0 - t2);
    }
    // compactly supported test fields only: constants cannot certify anything
    if (phi.maxCoeff() - phi.minCoeff() < 1e-12) {
      ++rejected;
      continue;
    }
    const double mass = phi.dot(forms.M * phi);
    if (mass < 1e-14) {
      ++rejected;
      continue;
    }
    const double ray = (phi.dot(forms.K * phi) - phi.dot(forms.P * phi)) / mass;
    min_ray = std::min(min_ray, ray);
    ++accepted;
  }
  if (accepted < trials) rep.hypothesis_status = "could not draw enough admissible bumps";

  rep.lhs = -min_ray;
  rep.rhs = forms.h;
  rep.add_constant("tol_disc", forms.h, "physical sample spacing", "measured");
  rep.set_param("R", R);
  rep.set_param("trials", accepted);
  rep.set_param("rejected", rejected);
  rep.set_param("min_rayleigh", min_ray);
  rep.set_param("min_vnu", min_vnu);
  rep.set_param("drift_identity_sup", drift_id_sup);
  rep.finalize();
  return rep;
}

}  // namespace solab
