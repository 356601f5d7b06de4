#pragma once

#include <optional>
#include <utility>

#include "core/convolution.hpp"
#include "core/families.hpp"
#include "core/grid.hpp"
#include "core/renyi.hpp"
#include "core/report.hpp"

namespace repi {

// Convolution exponent triple on the surface 1/q + 1/r - 1/p = 1. Infinite
// entries are allowed as continuous boundary extensions.
struct YoungExponents {
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;

  void validate() const;
};

// Optimal convolution constant C(p,q,r) in the normalization
// ||f*g||_p <= C^(d/2) ||f||_q ||g||_r, as the squared product of the
// Babenko-Beckner factors A_m = (m^(1/m) / m'^(1/m'))^(1/2) over q, r and
// the dual exponent p'. Gaussians attain it.
double sharp_young_constant(const YoungExponents& e);
double log_sharp_young_constant(const YoungExponents& e);

// (||f||_s by quadrature, V_s(f)^(-(d/2)(1-1/s))); the two must agree
std::pair<double, double> verify_norm_power_identity(const GridDensity& f,
                                                     double s);

// Norm-form check of the convolution inequality. ratio = bound / achieved,
// so validity means ratio >= 1 and extremizers drive it to 1.
struct YoungNormCheck {
  double achieved = 0.0;  // ||f*g||_p
  double bound = 0.0;     // C^(d/2) ||f||_q ||g||_r
  double ratio = 0.0;
};
YoungNormCheck verify_young_norm(const GridDensity& f, const GridDensity& g,
                                 const YoungExponents& e);

// Entropy-power form derived from the norm form: checks
//   V_p^a(X+Y) >= C^(-a p/(p-1)) V_p^(a p(q-1)/(q(p-1)))(X)
//                                 V_p^(a p(r-1)/(r(p-1)))(Y)
// for p > 1. This direction carries slack away from flat densities (the
// passage from V_q, V_r to V_p uses order monotonicity), so the ratio
// equals 1 only in degenerate cases.
EpiCheckCell verify_young_power_form(const GridDensity& f,
                                     const GridDensity& g,
                                     const YoungExponents& e, double alpha);

// Scalar exponent search: maximizes
//   F(u) = C^(-a p/(p-1)) a^(p(q-1)/(q(p-1))) b^(p(r-1)/(r(p-1)))
// over u = 1/q in [1/p, 1] with alpha = (p+1)/2, for a + b = 1 - 1/p.
// The certified bound is max F >= 1 - 1/p.
struct ExponentSearchResult {
  YoungExponents exponents;
  double max_value = 0.0;
};
ExponentSearchResult solve_exponents(double a, double b, double p);
// identical search on the tilted split a~ = t^alpha V_p^alpha(X) etc.
ExponentSearchResult verify_weighted_lemma(double a_tilde, double b_tilde,
                                           double p, WeightParameter t);

// Entropy power inequality cell evaluated from analytic sources so a
// doubled-resolution pass can estimate the grid sensitivity of the ratio.
// With `t` present:   V_p^alpha(sqrt(t)X + sqrt(1-t)Y) vs
//                     t^alpha V_p^alpha(X) + (1-t)^alpha V_p^alpha(Y)
// without `t`:        V_p^alpha(X+Y) vs V_p^alpha(X) + V_p^alpha(Y)
// p = 1 requires alpha = 1; p > 1 requires alpha >= (p+1)/2 unless
// `exploratory` relaxes the admissibility checks (used for the p = inf
// probes, where no admissible exponent exists).
struct EpiCheckOptions {
  long n = 4096;
  double tol_rel = 1e-6;
  bool refine = true;
  double refine_threshold = 1.05;
  double box_sigmas = 10.0;
  bool exploratory = false;
};
EpiCheckCell check_weighted_repi(const AnalyticDensity& fx,
                                 const AnalyticDensity& fy, double p,
                                 double alpha, std::optional<double> t,
                                 const EpiCheckOptions& opts = {});

// single-resolution core on prepared grids
EpiCheckCell check_weighted_repi_grid(const GridDensity& f,
                                      const GridDensity& g, double p,
                                      double alpha, std::optional<double> t,
                                      double tol_rel = 1e-6,
                                      bool exploratory = false);

// Sup-order probes of the unweighted inequality. alpha_one evaluates
// V_inf at alpha = 1 (where the inequality is known to break); the schedule
// mode walks finite orders at the boundary exponent and reports the trend.
// Exploratory: cells never fail.
enum class PinfMode { alpha_one, alpha_schedule };
ExperimentReport search_pinf_violation(
    const std::vector<std::pair<AnalyticDensity, AnalyticDensity>>& pairs,
    PinfMode mode, long n = 4096);

}  // namespace repi
