#pragma once

#include <optional>
#include <string>

#include "oufpt/density.hpp"
#include "oufpt/transforms.hpp"

namespace oufpt {

struct TransienceReport {
  enum class Verdict { transient, not_classified };
  enum class Case { horizon_finite, limit_positive_finite, test_inconclusive };

  Verdict verdict = Verdict::not_classified;
  Case classified_by = Case::test_inconclusive;
  std::optional<double> gamma;       // Gamma_{alpha,beta} when defined
  double limit_value = 0.0;          // the case-(ii) discriminant
  double integral_value = 0.0;       // KEP quadrature over [1, T_max]
  std::optional<double> tail_bound;  // analytic bound on the rest, when conclusive
  bool kep_convergent = false;
  bool kep_divergent = false;
  bool monotonicity_verified = false;
  std::string to_json() const;
};

/// Gamma_{alpha,beta}: alpha/beta (beta > 0, k >= 0) or
/// alpha^2/(alpha beta - 2k) (k < 0, beta > 2k/alpha - 2k alpha); empty otherwise.
std::optional<double> gamma_ab(const TransformParams& p);

/// Transience of S^{alpha,beta}_k f: case (i) finite horizon, case (ii) the
/// positive finite limit of g(t) = e^{kt} S f(t)/r(t), plus the KEP integral
/// on Lambda_k(S f) with a dyadic tail bound (classification refused when the
/// bound is inconclusive).
TransienceReport transience_test(const Boundary& f, const TransformParams& p);

/// g(t) = e^{kt} S^{alpha,beta}_k f(t) / r(t).
double asymptotic_g(const Boundary& f, const TransformParams& p, double t);

/// Large-t identity: e^{2kt} a^2 (ab r+1)^{-1/2}/(2k a^2 r + ab r + 1)
///   exp(-ab (Sf)^2 e^{2kt}/(2(ab r+1))) p_f(s(Gamma)). Throws when Gamma is
/// undefined; empty when p_f has no value at s(Gamma).
std::optional<double> asymptotic_density(const DensityFn& p_f, const Boundary& f,
                                         const TransformParams& p, double t);

struct AndersonPittResult {
  double value = 0.0;
  bool slope_condition_ok = true;      // t f'(s(t)) <= (c(2kt+1) - kt) f(s(t)), c < 1
  bool curvature_condition_ok = true;  // |t^2/(2kt+1)^2 (f''(s(t)) - k^2 f(s(t)))| <= c' f
  double slope_sup = 0.0;              // sup of the normalized slope ratio
  double curvature_sup = 0.0;
};

/// Regular-variation density estimate near a finite zeta; a_rv is the caller-supplied
/// regular-variation index in [1/2, 1). Condition (iii) is probed numerically;
/// failures are reported but the value is still returned.
AndersonPittResult anderson_pitt_density(const Boundary& f, const TransformParams& p,
                                         double a_rv, double t);

}  // namespace oufpt
