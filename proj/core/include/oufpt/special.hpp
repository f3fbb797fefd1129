#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oufpt/boundary.hpp"
#include "oufpt/transforms.hpp"

namespace oufpt {

/// Parameters of the parabolic boundary f_{a,b}(t) = a + b t^2 and its Airy
/// series; zeros are the negative Ai zeros, filled by make().
struct AirySeriesParams {
  double a_coef = 1.0;
  double b_coef = 1.0;
  std::size_t n_terms = 40;
  std::vector<double> zeros;
  std::vector<double> coef;  // Ai(z_j + (4b)^{1/3} a) / Ai'(z_j), cached by make()

  static AirySeriesParams make(double a, double b, std::size_t n_terms = 40);
};

struct SeriesEval {
  double value = 0.0;
  bool converged = true;  // false: truncation did not reach the 1e-14 target
};

/// BM density of T to a + b t^2, the residue series of the Airy-quotient
/// Laplace transform: (2b^2)^{1/3} e^{-2/3 b^2 t^3}
///   sum_j Ai(z_j + (4b)^{1/3} a)/Ai'(z_j) e^{(2b^2)^{1/3} z_j t}.
SeriesEval parabola_bm_density(const AirySeriesParams& p, double t);

/// OU density to g(t) = e^{-kt}(a + b r(t)^2): e^{2kt} x the BM series at r(t).
SeriesEval parabola_ou_density(const AirySeriesParams& p, double k, double t);

/// Density of T_k to S^{alpha,beta}_k g in closed form; matches the
/// transform_density route.
SeriesEval parabola_transformed_density(const AirySeriesParams& p,
                                        const TransformParams& tp, double t);

Boundary parabola_boundary_bm(double a, double b);
Boundary parabola_boundary_ou(double a, double b, double k);

/// t -> A e^{kt} + B e^{-kt}, the family implied by single-atom image measures.
Boundary hyperbolic_family(double A, double B, double k);

struct HyperbolicFit {
  double A = 0.0;
  double B = 0.0;
  double residual = 0.0;  // max abs misfit over the probes
};

/// Least-squares (A, B) for g against the basis (e^{kt}, e^{-kt}).
HyperbolicFit fit_hyperbolic(const Boundary& g, double k, std::span<const double> probes);

}  // namespace oufpt
