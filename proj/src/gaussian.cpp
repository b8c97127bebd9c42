#include "solab/gaussian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "solab/chart_ops.hpp"

namespace solab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

GaussianWeight gaussian_weight(const SampledHypersurface& s, const Vec& center, double t0) {
  if (!(t0 > 0)) throw std::invalid_argument("gaussian weight needs t0 > 0");
  GaussianWeight w;
  w.center = center.size() == 0 ? Vec::Zero(s.ambient_dim()) : center;
  if (w.center.size() != s.ambient_dim()) throw std::invalid_argument("gaussian center dimension mismatch");
  w.t0 = t0;
  w.normalizer = std::pow(4.0 * kPi * t0, -0.5 * s.n);
  const int S = s.sample_count();
  w.values.resize(S);
  for (int i = 0; i < S; ++i)
    w.values[i] = std::exp(-(s.positions.row(i).transpose() - w.center).squaredNorm() / (4.0 * t0));
  return w;
}

FunctionalValue weighted_integral(const SampledHypersurface& s, const Vec& field,
                                  const GaussianWeight& w, std::optional<double> lambda0) {
  const int S = s.sample_count();
  if (field.size() != S) throw std::invalid_argument("field size mismatch");
  FunctionalValue out;
  double sup_field = 0.0;
  for (int i = 0; i < S; ++i) {
    if (!std::isfinite(field[i])) throw std::invalid_argument("weighted integral needs a gap-free field");
    out.value += field[i] * w.values[i] * s.area_weights[i];
    sup_field = std::max(sup_field, std::abs(field[i]));
    out.region_radius =
        std::max(out.region_radius, (s.positions.row(i).transpose() - w.center).norm());
  }
  if (s.compact) return out;

  // dyadic annuli outside the sampled region: each B_{2^{j+1}R} carries the
  // polynomial volume bound, the weight on it is at most the inner-radius value
  if (!lambda0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  const double vol_coef = std::exp(-0.25) * std::pow(4.0 * kPi, 0.5 * s.n) * *lambda0;
  // the annuli must start where coverage ends, witnessed by the nearest rim
  // sample, not at the farthest sample (a square footprint's corners overshoot
  // its edges); assumes the center projects into the sampled footprint
  double R0 = out.region_radius;
  for (int i = 0; i < S; ++i)
    if (s.boundary[i])
      R0 = std::min(R0, (s.positions.row(i).transpose() - w.center).norm());
  double tail = 0.0;
  for (int j = 0; j < 80; ++j) {
    const double rin = R0 * std::pow(2.0, j);
    const double rout = 2.0 * rin;
    const double term = vol_coef * std::pow(rout, s.n) * std::exp(-rin * rin / (4.0 * w.t0));
    tail += term;
    if (term < 1e-300) break;
  }
  out.tail_bound = sup_field * tail;
  return out;
}

FunctionalValue f_functional(const SampledHypersurface& s, const Vec& x0, double t0,
                             std::optional<double> lambda0) {
  const GaussianWeight w = gaussian_weight(s, x0, t0);
  FunctionalValue v = weighted_integral(s, Vec::Ones(s.sample_count()), w, lambda0);
  v.value *= w.normalizer;
  v.tail_bound *= w.normalizer;
  return v;
}

namespace {

struct EntropyObjective {
  const SampledHypersurface* s;
  double tau_min, tau_max;
  mutable unsigned evals = 0;

  // params: (x0, tau = log t0); tau is clamped to the range where the
  // quadrature resolves the gaussian (t0 >= 4 h^2), else tiny scales alias
  double operator()(const Vec& p) const {
    ++evals;
    Vec x0 = p.head(p.size() - 1);
    const double tau = std::min(tau_max, std::max(tau_min, p[p.size() - 1]));
    return f_functional(*s, x0, std::exp(tau)).value;
  }
};

// standard Nelder-Mead maximization, parameter tolerance on the simplex spread
bool nelder_mead(const EntropyObjective& f, Vec& best, double& fbest, int max_iter) {
  const int d = static_cast<int>(best.size());
  std::vector<Vec> pts(d + 1, best);
  std::vector<double> val(d + 1);
  for (int i = 1; i <= d; ++i) pts[i][i - 1] += (i - 1 < d - 1) ? 0.25 : 0.5;
  for (int i = 0; i <= d; ++i) val[i] = f(pts[i]);

  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> order(d + 1);
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
    std::vector<Vec> sp(d + 1);
    std::vector<double> sv(d + 1);
    for (int i = 0; i <= d; ++i) {
      sp[i] = pts[order[i]];
      sv[i] = val[order[i]];
    }
    pts = sp;
    val = sv;

    double spread = 0.0;
    for (int i = 1; i <= d; ++i) spread = std::max(spread, (pts[i] - pts[0]).norm());
    if (spread < 1e-6) {
      best = pts[0];
      fbest = val[0];
      return true;
    }

    Vec centroid = Vec::Zero(d);
    for (int i = 0; i < d; ++i) centroid += pts[i];
    centroid /= d;
    const Vec refl = centroid + (centroid - pts[d]);
    const double frefl = f(refl);
    if (frefl > val[0]) {
      const Vec expd = centroid + 2.0 * (centroid - pts[d]);
      const double fexp = f(expd);
      if (fexp > frefl) {
        pts[d] = expd;
        val[d] = fexp;
      } else {
        pts[d] = refl;
        val[d] = frefl;
      }
    } else if (frefl > val[d - 1]) {
      pts[d] = refl;
      val[d] = frefl;
    } else {
      const Vec contr = centroid + 0.5 * (pts[d] - centroid);
      const double fcon = f(contr);
      if (fcon > val[d]) {
        pts[d] = contr;
        val[d] = fcon;
      } else {
        for (int i = 1; i <= d; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          val[i] = f(pts[i]);
        }
      }
    }
  }
  int ib = 0;
  for (int i = 1; i <= static_cast<int>(val.size()) - 1; ++i)
    if (val[i] > val[ib]) ib = i;
  best = pts[ib];
  fbest = val[ib];
  return false;
}

}  // namespace

EntropyResult entropy(const SampledHypersurface& s, std::optional<double> lambda0_hint) {
  const int m = s.ambient_dim();
  const StencilOps ops(s);
  const double h = ops.spacing();

  EntropyObjective obj;
  obj.s = &s;
  obj.tau_max = 4.0;
  obj.tau_min = std::max(-4.0, std::log(4.0 * h * h));

  // coarse grid over the dilated bounding box and the tau range
  Vec lo = s.positions.colwise().minCoeff().transpose();
  Vec hi = s.positions.colwise().maxCoeff().transpose();
  Vec mid = 0.5 * (lo + hi), half = 0.6 * (hi - lo);
  const int per_axis = m <= 3 ? 5 : 3;
  const int tau_steps = 9;
  Vec best = Vec::Zero(m + 1);
  double fbest = -1.0;
  std::vector<int> idx(m, 0);
  while (true) {
    Vec p(m + 1);
    for (int a = 0; a < m; ++a)
      p[a] = mid[a] + half[a] * (per_axis == 1 ? 0.0 : (2.0 * idx[a] / (per_axis - 1.0) - 1.0));
    for (int t = 0; t < tau_steps; ++t) {
      p[m] = std::max(obj.tau_min, -4.0 + 8.0 * t / (tau_steps - 1.0));
      const double v = obj(p);
      if (v > fbest) {
        fbest = v;
        best = p;
      }
    }
    int a = 0;
    for (; a < m; ++a) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
    if (a == m) break;
  }

  EntropyResult res;
  res.converged = nelder_mead(obj, best, fbest, 400 * (m + 1));
  res.value = fbest;
  res.center = best.head(m);
  res.t0 = std::exp(std::min(obj.tau_max, std::max(obj.tau_min, best[m])));

  // local Hessian by central differences; a near-zero eigenvalue marks a flat
  // optimum direction (translations along a plane, scale on a cone)
  const double delta = 1e-3;
  Mat H(m + 1, m + 1);
  const double f0 = fbest;
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) {
      Vec pa = best, pb = best, pab = best, pba = best;
      if (a == b) {
        pa[a] += delta;
        pb[a] -= delta;
        H(a, a) = (obj(pa) - 2.0 * f0 + obj(pb)) / (delta * delta);
      } else {
        pa[a] += delta;
        pa[b] += delta;
        pb[a] -= delta;
        pb[b] -= delta;
        pab[a] += delta;
        pab[b] -= delta;
        pba[a] -= delta;
        pba[b] += delta;
        H(a, b) = H(b, a) = (obj(pa) + obj(pb) - obj(pab) - obj(pba)) / (4.0 * delta * delta);
      }
    }
  // relative test: truncation leaks curvature ~ rim mass into directions that
  // are exactly flat in the continuum, so an absolute threshold cannot work
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  double curv_max = 0.0;
  for (int a = 0; a <= m; ++a) curv_max = std::max(curv_max, std::abs(es.eigenvalues()[a]));
  for (int a = 0; a <= m; ++a)
    if (std::abs(es.eigenvalues()[a]) < 1e-3 * curv_max) res.flat_direction = true;

  // tail at the argmax; without an entropy bound use a generous provisional one
  const double lam = lambda0_hint ? *lambda0_hint : 2.0 * std::max(1.0, fbest);
  res.tail_bound = f_functional(s, res.center, res.t0, lam).tail_bound;
  res.evaluations = obj.evals;
  return res;
}

EstimateReport volume_growth_certificate(const SampledHypersurface& s, const Vec& p, double r,
                                         double lambda0) {
  if (!(r > 0)) throw std::invalid_argument("volume growth needs r > 0");
  EstimateReport rep;
  rep.name = "volume-growth";
  rep.surface = s.source;

  // plain cell sum; cells straddling the sphere are counted by center
  double vol = 0.0;
  const Vec center = p.size() == 0 ? Vec::Zero(s.ambient_dim()) : p;
  for (int i = 0; i < s.sample_count(); ++i)
    if ((s.positions.row(i).transpose() - center).norm() <= r) vol += s.area_weights[i];

  rep.lhs = vol;
  rep.rhs = std::exp(-0.25) * std::pow(4.0 * kPi, 0.5 * s.n) * lambda0 * std::pow(r, s.n);
  rep.add_constant("volume_bound", rep.rhs, "e^{-1/4} (4 pi)^{n/2} lambda0 r^n");
  rep.add_constant("lambda0", lambda0, "entropy bound, caller supplied", "input");
  rep.set_param("r", r);
  rep.set_param("n", s.n);
  rep.finalize();
  return rep;
}

}  // namespace solab
