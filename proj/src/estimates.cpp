#include "solab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "solab/chart_ops.hpp"
#include "solab/gaussian.hpp"
#include "solab/geometry.hpp"
#include "solab/stability.hpp"

namespace solab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kDofCap = 4000;

double theta_scale(const Vec& x0) {
  const double r = x0.norm();
  return r > 1.0 ? 1.0 / r : 1.0;
}

// |grad^Sigma r|^2 = 1 - <(x-c)/r, nu>^2 for the ambient distance r(x) = |x-c|
double tangential_r_factor(const SampledHypersurface& s, int i, const Vec& center, double d) {
  if (d <= 0) return 0.0;
  const Vec dir = (s.position(i) - center) / d;
  const double c = dir.dot(s.normal(i));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

int nearest_sample(const SampledHypersurface& s, const Vec& x0, double* dist_out) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.sample_count(); ++i) {
    const double d = (s.position(i) - x0).norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (dist_out) *dist_out = best_d;
  return best;
}

struct StabilityWitness {
  double r_used = 0.0;
  double lambda1 = 0.0;
  double tol = 0.0;
  bool ok = false;
};

// eigencheck for the 1/2-stability hypothesis; if B_R holds more than the
// dense-solver cap the check runs on the largest admissible sub-ball (a
// negative verdict there already refutes stability in B_R)
StabilityWitness half_stability_witness(const SampledHypersurface& s, double R) {
  std::vector<double> radii;
  for (int i = 0; i < s.sample_count(); ++i) {
    if (s.boundary[i]) continue;
    const double d = s.positions.row(i).norm();
    if (d <= R) radii.push_back(d);
  }
  std::sort(radii.begin(), radii.end());
  double r = R;
  if (static_cast<int>(radii.size()) > kDofCap)
    r = std::nextafter(radii[kDofCap - 1], 0.0);
  const SpectralResult res = first_eigenvalue(s, r, 1);
  StabilityWitness w;
  w.r_used = r;
  w.lambda1 = res.eigenvalues[0];
  w.tol = res.tol_disc;
  w.ok = w.lambda1 >= -0.5 - w.tol;
  return w;
}

double measured_entropy(const SampledHypersurface& s) { return entropy(s).value; }
}  // namespace

Cutoff linear_annulus_cutoff(const SampledHypersurface& s, const Vec& center, double inner,
                             double outer) {
  if (center.size() != s.ambient_dim()) throw std::invalid_argument("cutoff center dimension");
  if (!(outer > inner) || inner < 0) throw std::invalid_argument("need 0 <= inner < outer");
  Cutoff c;
  c.kind = Cutoff::Kind::linear_annulus;
  c.center = center;
  c.inner = inner;
  c.outer = outer;
  const int S = s.sample_count();
  c.values = Vec::Zero(S);
  c.grad_norm = Vec::Zero(S);
  const double slope = 1.0 / (outer - inner);
  for (int i = 0; i < S; ++i) {
    const double d = (s.position(i) - center).norm();
    if (d <= inner) {
      c.values[i] = 1.0;
    } else if (d < outer) {
      c.values[i] = (outer - d) * slope;
      c.grad_norm[i] = slope * tangential_r_factor(s, i, center, d);
    }
  }
  return c;
}

Cutoff logarithmic_cutoff(const SampledHypersurface& s, const Vec& center, double r0, int k) {
  if (center.size() != s.ambient_dim()) throw std::invalid_argument("cutoff center dimension");
  if (!(r0 > 0) || k < 1) throw std::invalid_argument("need r0 > 0 and k >= 1");
  Cutoff c;
  c.kind = Cutoff::Kind::logarithmic;
  c.center = center;
  c.r0 = r0;
  c.k = k;
  const double rin = r0 * std::exp(-static_cast<double>(k));
  const int S = s.sample_count();
  c.values = Vec::Zero(S);
  c.grad_norm = Vec::Zero(S);
  for (int i = 0; i < S; ++i) {
    const double d = (s.position(i) - center).norm();
    if (d <= rin) {
      c.values[i] = 1.0;
    } else if (d < r0) {
      c.values[i] = (std::log(r0) - std::log(d)) / k;
      c.grad_norm[i] = tangential_r_factor(s, i, center, d) / (k * d);
    }
  }
  return c;
}

double omega_n(int n) {
  if (n < 1) throw std::invalid_argument("omega_n needs n >= 1");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double decay_constant(int n, double lambda0, double a) {
  if (!(lambda0 > 0) || !(a > 0)) throw std::invalid_argument("decay constant needs lambda0, a > 0");
  return (4.0 / (a * a)) * std::exp(-0.25) * std::pow(4.0 * kPi, 0.5 * n) * lambda0 *
         std::exp(0.75 * a * a);
}

double ssy_default_a(int n, double q) { return 0.5 * (std::sqrt(2.0 / (n + 1)) - q); }

namespace {
double ssy_gap(int n, double q, double a) { return 2.0 / (n + 1) - q * q - a * q; }
}

double ssy_constant(int n, double q, double a) {
  if (!(a > 0) || q < 0) throw std::invalid_argument("need a > 0 and q >= 0");
  const double D = ssy_gap(n, q, a);
  if (!(D > 0)) throw std::invalid_argument("D = 2/(n+1) - q^2 - a q must be positive");
  const double t1 = 2.0 + 2.0 * (1.0 + q) * (1.0 + q) * (1.0 + q / a) / D;
  const double t2 = n * (1.0 + q) * (1.0 + q) / ((n + 1) * D);
  return std::max(t1, t2);
}

double ssy_translator_constant(int n, double q, double a) {
  if (!(a > 0) || q < 0) throw std::invalid_argument("need a > 0 and q >= 0");
  const double D = ssy_gap(n, q, a);
  if (!(D > 0)) throw std::invalid_argument("D = 2/(n+1) - q^2 - a q must be positive");
  const double t1 = 2.0 + 2.0 * (1.0 + q) * (1.0 + q) * (1.0 + q / a) / D;
  const double t2 = 2.0 * n * (1.0 + q) * (1.0 + q) / ((n + 1) * D);
  return std::max(t1, t2);
}

double choi_schoen_threshold(int n) {
  return omega_n(n) * std::pow(2.0, -n) * std::exp(-2.0 * n);
}

double scale_energy_constant(int n, double p, double lambda0) {
  if (p < 2.0 - 1e-12 || p > 4.0 + 1e-12) throw std::invalid_argument("need 2 <= p <= 4");
  if (!(lambda0 > 0)) throw std::invalid_argument("need lambda0 > 0");
  const double c2 = 4.0 * std::exp(0.75) * std::pow(4.0 * kPi, 0.5 * n) * lambda0 * std::pow(2.0, n);
  const double c4 = (4.0 * (n + 3) + 0.5 * n) * std::exp(1.75) * std::pow(4.0 * kPi, 0.5 * n) *
                    lambda0 * std::pow(2.0, 2 * n);
  return std::pow(c2, 0.5 * (4.0 - p)) * std::pow(c4, 0.5 * (p - 2.0));
}

double log_cutoff_constant(int n, double lambda0, int k) {
  if (k < 1 || !(lambda0 > 0)) throw std::invalid_argument("need k >= 1 and lambda0 > 0");
  double ring_sum = 0.0;
  for (int l = 0; l < k; ++l) ring_sum += std::exp(-static_cast<double>(n - 2) * l);
  return std::exp(2.75) * std::pow(4.0 * kPi, 0.5 * n) * lambda0 * ring_sum / k;
}

double ball_integral(const SampledHypersurface& s, const Vec& field, const Vec& center, double r) {
  if (field.size() != s.sample_count()) throw std::invalid_argument("field size mismatch");
  if (center.size() != s.ambient_dim()) throw std::invalid_argument("center dimension mismatch");
  const StencilOps ops(s);
  const double h = ops.spacing();
  double acc = 0.0;
  for (int i = 0; i < s.sample_count(); ++i) {
    const double d = (s.position(i) - center).norm();
    // fractional boundary cells: a cell of extent h centered at the sample
    const double frac = std::clamp((r - d) / h + 0.5, 0.0, 1.0);
    if (frac <= 0) continue;
    if (!std::isfinite(field[i])) throw std::invalid_argument("non-finite field value in the ball");
    acc += field[i] * s.area_weights[i] * frac;
  }
  return acc;
}

EstimateReport integral_curvature_decay(const SampledHypersurface& s, double R, double lambda0,
                                        double a) {
  if (!(R > 1.0)) throw std::invalid_argument("need R > 1");
  if (!(a > 0) || 2.0 * a >= R) throw std::invalid_argument("need 0 < 2a < R");
  double maxr = 0.0;
  for (int i = 0; i < s.sample_count(); ++i)
    maxr = std::max(maxr, s.positions.row(i).norm());
  if (maxr < R - 1e-9) throw std::invalid_argument("surface not sampled out to radius R");

  const GeometryFields g = compute_geometry(s);
  EstimateReport rep;
  rep.name = "curvature-decay";
  rep.surface = s.source;
  rep.lhs = ball_integral(s, g.normA2, Vec::Zero(s.ambient_dim()), R - 2.0 * a);
  const double C = decay_constant(s.n, lambda0, a);
  rep.rhs = C * std::pow(R, s.n) * std::exp(-0.5 * a * R);

  const StabilityWitness w = half_stability_witness(s, R);
  if (!w.ok) rep.hypothesis_status = "not 1/2-stable";
  rep.add_constant("C", C, "(4/a^2) e^{-1/4} (4 pi)^{n/2} lambda0 e^{3 a^2/4}", "formula");
  rep.add_constant("lambda0", lambda0, "entropy bound", "input");
  rep.add_constant("lambda1", w.lambda1, "first Dirichlet eigenvalue of -L", "measured");
  rep.set_param("R", R);
  rep.set_param("a", a);
  rep.set_param("n", s.n);
  rep.set_param("r_eigencheck", w.r_used);
  rep.set_param("tol_disc", w.tol);
  {
    std::ostringstream os;
    os << "stability eigencheck on B_" << w.r_used << ": lambda1 = " << w.lambda1;
    rep.notes = os.str();
  }
  rep.finalize();
  return rep;
}

EstimateReport simons_inequality_check(const SampledHypersurface& s) {
  const GeometryFields g = compute_geometry(s);
  const StencilOps ops(s);
  const Vec lap = ops.laplace_beltrami(g.normA2);
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (int i = 0; i < s.sample_count(); ++i) {
    if (!std::isfinite(lap[i]) || !g.centered[i]) continue;
    const double a2 = g.normA2[i];
    const double x2 = s.positions.row(i).squaredNorm();
    const double q = -0.125 * x2 * a2 + a2 - 2.0 * a2 * a2;
    worst = std::max(worst, q - lap[i]);
    ++checked;
  }
  if (checked == 0) throw std::runtime_error("no interior samples with a valid Laplacian");
  const double h = ops.spacing();
  EstimateReport rep;
  rep.name = "simons-inequality";
  rep.surface = s.source;
  rep.lhs = worst;  // largest pointwise violation of Lap|A|^2 >= q
  rep.rhs = 1e-6 + h * h;
  rep.add_constant("tol", rep.rhs, "1e-6 + h^2", "formula");
  rep.set_param("checked_samples", checked);
  rep.set_param("h", h);
  rep.finalize();
  return rep;
}

MeanValueTrace mean_value_monotonicity(const SampledHypersurface& s, const Vec& x0, double R,
                                       double s_max, int count) {
  if (count < 2) throw std::invalid_argument("need at least two radii");
  if (x0.size() != s.ambient_dim()) throw std::invalid_argument("x0 dimension mismatch");
  if (x0.norm() > R - 2.0) throw std::invalid_argument("x0 must lie in B_{R-2}");
  const StencilOps ops(s);
  const double h = ops.spacing();
  double dist = 0.0;
  nearest_sample(s, x0, &dist);
  if (dist > 2.0 * h) throw std::invalid_argument("x0 not on the sampled surface");

  double rim = std::numeric_limits<double>::infinity();
  int inside = 0;
  for (int i = 0; i < s.sample_count(); ++i) {
    const double d = (s.position(i) - x0).norm();
    if (s.boundary[i]) rim = std::min(rim, d);
    if (d <= s_max) ++inside;
  }
  if (s_max > std::min(1.0, rim) + 1e-9)
    throw std::invalid_argument("s_max exceeds min(1, rim distance)");
  if (inside < 20) throw std::runtime_error("too few samples inside B_{s_max}(x0)");

  MeanValueTrace tr;
  tr.center = x0;
  tr.R = R;
  const GeometryFields geo = compute_geometry(s);
  tr.C_meas = linear_growth_constant(s, geo, R);
  tr.Cprime = 0.125 + 2.0 * tr.C_meas * tr.C_meas;

  const double s_min = std::max(s_max / count, 4.0 * h);
  if (!(s_min < s_max)) throw std::runtime_error("balls under-resolved: spacing too coarse");
  tr.radii = Vec::Zero(count);
  tr.g = Vec::Zero(count);
  tr.h = Vec::Zero(count);
  for (int i = 0; i < count; ++i) {
    const double si = s_min + (s_max - s_min) * i / (count - 1);
    tr.radii[i] = si;
    tr.g[i] = ball_integral(s, geo.normA2, x0, si) / std::pow(si, s.n);
    tr.h[i] = tr.g[i] * std::exp(tr.Cprime * R * R * si * si + 0.5 * R * si);
  }
  tr.monotone = true;
  tr.worst_drop = 0.0;
  for (int i = 0; i + 1 < count; ++i) {
    const double drop = tr.h[i] - tr.h[i + 1];
    tr.worst_drop = std::max(tr.worst_drop, drop);
    if (drop > 1e-8) tr.monotone = false;
  }
  return tr;
}

EstimateReport bootstrap_pointwise_bound(const SampledHypersurface& s, const Vec& x0, double R,
                                         double lambda0) {
  if (!(R > 1.0)) throw std::invalid_argument("need R > 1");
  if (x0.norm() > R - 2.0) throw std::invalid_argument("x0 must lie in B_{R-2}");
  const StencilOps ops(s);
  double dist = 0.0;
  const int at = nearest_sample(s, x0, &dist);
  if (dist > 2.0 * ops.spacing()) throw std::invalid_argument("x0 not on the sampled surface");

  const GeometryFields g = compute_geometry(s);
  const double c_meas = linear_growth_constant(s, g, R);
  const double cprime = 0.125 + 2.0 * c_meas * c_meas;
  const double cdecay = decay_constant(s.n, lambda0, 0.5);

  EstimateReport rep;
  rep.name = "bootstrap-pointwise";
  rep.surface = s.source;
  rep.lhs = g.normA2[at];
  rep.rhs = std::exp(cprime + 0.5) / omega_n(s.n) * std::pow(R, s.n) *
            (cdecay * std::pow(R, s.n) * std::exp(-0.25 * R));

  const StabilityWitness w = half_stability_witness(s, R);
  if (!w.ok) {
    rep.hypothesis_status = "not 1/2-stable";
    rep.notes = "decay chain not applicable on this surface";
  }
  rep.add_constant("Cprime", cprime, "1/8 + 2 C_meas^2", "formula");
  rep.add_constant("C_meas", c_meas, "sup |A|/(1+|x|) on B_R", "measured");
  rep.add_constant("C", cdecay, "(4/a^2) e^{-1/4} (4 pi)^{n/2} lambda0 e^{3 a^2/4}, a = 1/2",
                   "formula");
  rep.add_constant("omega_n", omega_n(s.n), "pi^{n/2}/Gamma(n/2+1)", "formula");
  rep.add_constant("lambda0", lambda0, "entropy bound", "input");
  rep.add_constant("lambda1", w.lambda1, "first Dirichlet eigenvalue of -L", "measured");
  rep.set_param("R", R);
  rep.set_param("n", s.n);
  rep.set_param("r_eigencheck", w.r_used);
  rep.set_param("tol_disc", w.tol);
  rep.finalize();
  return rep;
}

EstimateReport choi_schoen(const SampledHypersurface& s, const Vec& x0, double r0, double eps) {
  const double theta = theta_scale(x0);
  if (!(r0 > 0) || r0 > theta * (1.0 + 1e-9))
    throw std::invalid_argument("r0 exceeds the theta = min(1, 1/|x0|) scale");
  const StencilOps ops(s);
  double dist = 0.0;
  nearest_sample(s, x0, &dist);
  if (dist > 2.0 * ops.spacing()) throw std::invalid_argument("x0 not on the sampled surface");
  int inside = 0;
  for (int i = 0; i < s.sample_count(); ++i)
    if ((s.position(i) - x0).norm() <= r0) ++inside;
  if (inside < 20) throw std::invalid_argument("insufficient coverage of B_{r0}(x0)");

  const bool supplied = eps > 0;
  if (!supplied) eps = choi_schoen_threshold(s.n);
  const GeometryFields g = compute_geometry(s);
  Vec field(s.sample_count());
  for (int i = 0; i < s.sample_count(); ++i) field[i] = std::pow(g.normA2[i], 0.5 * s.n);
  const double energy = ball_integral(s, field, x0, r0);

  double worst = 0.0;
  for (int j = 1; j <= 32; ++j) {
    const double sigma = r0 * j / 32.0;
    const double reach = r0 - sigma;
    for (int i = 0; i < s.sample_count(); ++i) {
      if ((s.position(i) - x0).norm() > reach) continue;
      worst = std::max(worst, sigma * sigma * g.normA2[i]);
    }
  }

  EstimateReport rep;
  rep.name = "choi-schoen";
  rep.surface = s.source;
  rep.lhs = worst;
  rep.rhs = 1.0;
  rep.add_constant("eps", eps, "omega_n 2^{-n} e^{-2n}", supplied ? "input" : "formula");
  rep.add_constant("E", energy, "integral of |A|^n over B_{r0}(x0)", "measured");
  rep.set_param("r0", r0);
  rep.set_param("theta", theta);
  rep.set_param("sigma_count", 32);
  rep.set_param("n", s.n);
  if (energy >= eps) {
    rep.hypothesis_status = "small-energy hypothesis fails: E >= eps";
    if (worst <= 1.0) rep.notes = "pointwise conclusion holds anyway at all sampled scales";
  }
  rep.finalize();
  return rep;
}

EstimateReport ssy_inequality(const SampledHypersurface& s, const Cutoff& cutoff, double q,
                              double a, double R) {
  if (q < 0) throw std::invalid_argument("need q >= 0");
  if (a <= 0) a = ssy_default_a(s.n, q);
  const double D = ssy_gap(s.n, q, a);
  if (!(D > 0)) throw std::invalid_argument("D = 2/(n+1) - q^2 - a q must be positive");
  const int S = s.sample_count();
  if (cutoff.values.size() != S) throw std::invalid_argument("cutoff not bound to this surface");

  const bool translator = s.catalog && std::holds_alternative<Bowl>(*s.catalog);
  for (int i = 0; i < S; ++i) {
    if (cutoff.values[i] <= 1e-14) continue;
    if (s.positions.row(i).norm() > R * (1.0 + 1e-9))
      throw std::invalid_argument("cutoff not compactly supported in B_R");
    if (s.boundary[i]) throw std::invalid_argument("cutoff support touches the sampled rim");
  }

  const GeometryFields g = compute_geometry(s);
  double lhs = 0.0, grad_term = 0.0, mass_term = 0.0;
  for (int i = 0; i < S; ++i) {
    const double rho = translator ? std::exp(s.positions(i, s.n))
                                  : std::exp(-0.25 * s.positions.row(i).squaredNorm());
    const double a2 = g.normA2[i];
    const double phi = cutoff.values[i];
    const double w = s.area_weights[i] * rho;
    lhs += std::pow(a2, 2.0 + q) * phi * phi * w;
    grad_term += std::pow(a2, 1.0 + q) * cutoff.grad_norm[i] * cutoff.grad_norm[i] * w;
    mass_term += std::pow(a2, 1.0 + q) * phi * phi * w;
  }
  const double C = translator ? ssy_translator_constant(s.n, q, a) : ssy_constant(s.n, q, a);

  EstimateReport rep;
  rep.name = translator ? "ssy-translator" : "ssy";
  rep.surface = s.source;
  rep.lhs = lhs;
  rep.rhs = C * (grad_term + R * R * mass_term);
  rep.add_constant("C", C,
                   translator
                       ? "max(2 + 2(1+q)^2 (1+q/a)/D, 2n(1+q)^2/((n+1) D)), D = 2/(n+1) - q^2 - a q"
                       : "max(2 + 2(1+q)^2 (1+q/a)/D, n(1+q)^2/((n+1) D)), D = 2/(n+1) - q^2 - a q",
                   "formula");
  rep.add_constant("D", D, "2/(n+1) - q^2 - a q", "formula");
  rep.set_param("q", q);
  rep.set_param("a", a);
  rep.set_param("R", R);
  rep.set_param("n", s.n);
  rep.set_param("grad_term", grad_term);
  rep.set_param("mass_term", mass_term);
  rep.notes = translator ? "translator weight e^{x_{n+1}}; L-stability assumed (caller responsibility)"
                         : "assumes 1/2-stability in B_R (caller responsibility)";
  rep.finalize();
  return rep;
}

EstimateReport scale_invariant_energy(const SampledHypersurface& s, const Vec& x0, double r,
                                      double p) {
  if (p < 2.0 - 1e-12 || p > 4.0 + 1e-12) throw std::invalid_argument("need 2 <= p <= 4");
  const double theta = theta_scale(x0);
  if (!(r > 0) || r > 0.5 * theta * (1.0 + 1e-9))
    throw std::invalid_argument("need r <= theta/2 with theta = min(1, 1/|x0|)");
  const StencilOps ops(s);
  double dist = 0.0;
  nearest_sample(s, x0, &dist);
  if (dist > 2.0 * ops.spacing()) throw std::invalid_argument("x0 not on the sampled surface");

  const GeometryFields g = compute_geometry(s);
  Vec field(s.sample_count());
  for (int i = 0; i < s.sample_count(); ++i) field[i] = std::pow(g.normA2[i], 0.5 * p);
  const double lambda0 = measured_entropy(s);
  const double C = scale_energy_constant(s.n, p, lambda0);

  EstimateReport rep;
  rep.name = "scale-energy";
  rep.surface = s.source;
  rep.lhs = ball_integral(s, field, x0, r);
  rep.rhs = C * std::pow(r, s.n - p);
  rep.add_constant(
      "C_p", C,
      "C2^{(4-p)/2} C4^{(p-2)/2}; C2 = 4 e^{3/4} (4 pi)^{n/2} lambda0 2^n; "
      "C4 = (4(n+3)+n/2) e^{7/4} (4 pi)^{n/2} lambda0 2^{2n}",
      "formula");
  rep.add_constant("lambda0", lambda0, "entropy optimizer value", "measured");
  rep.set_param("p", p);
  rep.set_param("r", r);
  rep.set_param("theta", theta);
  rep.set_param("n", s.n);
  rep.finalize();
  return rep;
}

EstimateReport log_cutoff_energy(const SampledHypersurface& s, const Vec& p, double r0, int k) {
  if (k < 2) throw std::invalid_argument("need k >= 2");
  const double theta = theta_scale(p);
  if (!(r0 > 0) || r0 > 0.25 * theta * (1.0 + 1e-9))
    throw std::invalid_argument("need r0 <= theta/4 with theta = min(1, 1/|p|)");

  const Cutoff eta = logarithmic_cutoff(s, p, r0, k);
  const int S = s.sample_count();

  // per-ring sample counts and the r^{-2} ring integrals of the chain
  Vec ring_counts = Vec::Zero(k);
  Vec ring_r2 = Vec::Zero(k);
  double grad_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < S; ++i) {
    const double d = (s.position(i) - p).norm();
    if (d <= r0 * std::exp(-static_cast<double>(k)) || d > r0) continue;
    const int l = std::min(k - 1, static_cast<int>(std::floor(std::log(r0 / d))));
    ring_counts[l] += 1.0;
    ring_r2[l] += s.area_weights[i] / (d * d);
    grad_excess = std::max(grad_excess, eta.grad_norm[i] - 1.0 / (k * d));
  }
  double min_count = std::numeric_limits<double>::infinity();
  for (int l = 0; l < k; ++l) min_count = std::min(min_count, ring_counts[l]);
  if (min_count < 4)
    throw std::runtime_error("cutoff annulus under-resolved: a dyadic ring holds < 4 samples");

  const GeometryFields g = compute_geometry(s);
  double lhs = 0.0;
  for (int i = 0; i < S; ++i)
    lhs += g.normA2[i] * eta.values[i] * eta.values[i] * s.area_weights[i];
  const double lambda0 = measured_entropy(s);
  const double C = log_cutoff_constant(s.n, lambda0, k);

  EstimateReport rep;
  rep.name = "log-cutoff";
  rep.surface = s.source;
  rep.lhs = lhs;
  rep.rhs = (C / k) * std::pow(r0, s.n - 2);
  rep.add_constant("C", C,
                   "e^{11/4} (4 pi)^{n/2} lambda0 S_n(k)/k, S_n(k) = sum_{l<k} e^{-(n-2) l}",
                   "formula");
  rep.add_constant("lambda0", lambda0, "entropy optimizer value", "measured");
  rep.set_param("r0", r0);
  rep.set_param("k", k);
  rep.set_param("n", s.n);
  rep.set_param("min_ring_count", min_count);
  rep.set_param("grad_excess_max", grad_excess);
  rep.series.emplace_back("ring_counts", ring_counts);
  rep.series.emplace_back("ring_r2_integral", ring_r2);
  rep.finalize();
  return rep;
}

}  // namespace solab
