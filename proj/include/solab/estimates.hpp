#pragma once

#include "solab/report.hpp"
#include "solab/surface.hpp"

namespace solab {

// Radial cutoff functions bound to a surface: per-sample values and exact
// gradient norms (|phi'(r)| |grad r| with |grad r|^2 = 1 - <x-c,nu>^2/r^2).
struct Cutoff {
  enum class Kind { linear_annulus, logarithmic, custom_radial };
  Kind kind = Kind::linear_annulus;
  Vec center;
  double inner = 0.0, outer = 0.0;  // linear annulus: 1 inside, 0 outside
  double r0 = 0.0;
  int k = 0;                        // logarithmic: 1 below e^{-k} r0, 0 beyond r0
  Vec values;
  Vec grad_norm;
};

Cutoff linear_annulus_cutoff(const SampledHypersurface& s, const Vec& center,
                             double inner, double outer);
Cutoff logarithmic_cutoff(const SampledHypersurface& s, const Vec& center,
                          double r0, int k);

// volume of the unit n-ball
double omega_n(int n);

// ---- derived certificate constants (formula strings match report output) ----

// integral curvature decay: C = (4/a^2) e^{-1/4} (4 pi)^{n/2} lambda0 e^{3a^2/4}
double decay_constant(int n, double lambda0, double a);

// SSY chain: C = max(2 + 2(1+q)^2 (1+q/a)/D, n (1+q)^2 / ((n+1) D)),
// D = 2/(n+1) - q^2 - a q; translator variant replaces the second entry by
// 2n (1+q)^2 / ((n+1) D)
double ssy_default_a(int n, double q);
double ssy_constant(int n, double q, double a);
double ssy_translator_constant(int n, double q, double a);

// small-energy threshold: eps = omega_n 2^{-n} e^{-2n}
double choi_schoen_threshold(int n);

// scale-invariant energy: C_2 = 4 e^{3/4} (4 pi)^{n/2} lambda0 2^n,
// C_4 = (4(n+3) + n/2) e^{7/4} (4 pi)^{n/2} lambda0 2^{2n}, Hoelder in between
double scale_energy_constant(int n, double p, double lambda0);

// log-cutoff energy: C = e^{11/4} (4 pi)^{n/2} lambda0 S_n(k) / k with the ring
// sum S_n(k) = sum_{l<k} e^{-(n-2) l}; the certificate bound is (C/k) r0^{n-2},
// so the full prefactor carries 1/k^2
double log_cutoff_constant(int n, double lambda0, int k);

// ---- certificates ------------------------------------------------------------

// integral |A|^2 over B_{R-2a} <= C R^n e^{-aR/2}; hypothesis: 1/2-stable in
// B_R, checked by eigensolve and reported in hypothesis_status
EstimateReport integral_curvature_decay(const SampledHypersurface& s, double R,
                                        double lambda0, double a = 0.5);

// pointwise Delta |A|^2 >= -(1/8)|x|^2 |A|^2 + |A|^2 - 2|A|^4 - tol
EstimateReport simons_inequality_check(const SampledHypersurface& s);

struct MeanValueTrace {
  Vec center;
  Vec radii;   // ascending
  Vec g;       // s^{-n} integral of |A|^2 over B_s(x0)
  Vec h;       // g(s) exp(C' R^2 s^2 + R s / 2)
  double R = 0.0;
  double C_meas = 0.0;   // measured linear growth constant
  double Cprime = 0.0;   // 1/8 + 2 C_meas^2
  bool monotone = false; // h nondecreasing within 1e-8
  double worst_drop = 0.0;
};

MeanValueTrace mean_value_monotonicity(const SampledHypersurface& s, const Vec& x0,
                                       double R, double s_max, int count);

// |A|^2(x0) <= (e^{C'+1/2}/omega_n) R^n * decay RHS at R
EstimateReport bootstrap_pointwise_bound(const SampledHypersurface& s, const Vec& x0,
                                         double R, double lambda0);

// small total curvature implies pointwise bound: if E = integral |A|^n over
// B_{r0}(x0) < eps then sigma^2 |A|^2(y) <= 1 on B_{r0-sigma}, 32 sigma values
EstimateReport choi_schoen(const SampledHypersurface& s, const Vec& x0, double r0,
                           double eps = -1.0);

// integral |A|^{4+2q} phi^2 rho <= C (integral |A|^{2+2q} |grad phi|^2 rho
//                                     + R^2 integral |A|^{2+2q} phi^2 rho)
EstimateReport ssy_inequality(const SampledHypersurface& s, const Cutoff& cutoff,
                              double q, double a, double R);

// integral |A|^p over B_r(x0) <= C_p r^{n-p}, 2 <= p <= 4, r <= theta/2
EstimateReport scale_invariant_energy(const SampledHypersurface& s, const Vec& x0,
                                      double r, double p);

// integral |A|^2 eta^2 over B_{e^{-k} r0} <= (C/k) r0^{n-2} via the dyadic
// ring chain; requires >= 4 samples per ring
EstimateReport log_cutoff_energy(const SampledHypersurface& s, const Vec& p,
                                 double r0, int k);

// quadrature of field over B_r(center) with fractional boundary cells
double ball_integral(const SampledHypersurface& s, const Vec& field, const Vec& center,
                     double r);

}  // namespace solab
