#include "oufpt/special.hpp"

#include <cmath>
#include <stdexcept>

#include "oufpt/airy.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

AirySeriesParams AirySeriesParams::make(double a, double b, std::size_t n_terms) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("AirySeriesParams: a, b must be > 0");
  AirySeriesParams p;
  p.a_coef = a;
  p.b_coef = b;
  p.n_terms = n_terms;
  p.zeros = airy_zeros(n_terms);
  const double shift = std::cbrt(4.0 * b) * a;
  p.coef.reserve(p.zeros.size());
  for (const double z : p.zeros)
    p.coef.push_back(airy(z + shift).ai / airy(z).ai_prime);
  return p;
}

namespace {

// Series core at BM time u: rate (2b^2)^{1/3}, shift (4b)^{1/3} a.
SeriesEval series_at(const AirySeriesParams& p, double u) {
  if (p.coef.size() < std::min(p.zeros.size(), p.n_terms))
    throw std::invalid_argument("parabola density: params not built via make()");
  const double omega = std::cbrt(2.0 * p.b_coef * p.b_coef);
  double sum = 0.0;
  bool converged = false;
  for (std::size_t j = 0; j < p.zeros.size() && j < p.n_terms; ++j) {
    const double term = p.coef[j] * std::exp(omega * p.zeros[j] * u);
    sum += term;
    if (j >= 2 && std::abs(term) < 1e-14 * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  const double b2 = p.b_coef * p.b_coef;
  return {omega * std::exp(-2.0 / 3.0 * b2 * u * u * u) * sum, converged};
}

}  // namespace

SeriesEval parabola_bm_density(const AirySeriesParams& p, double t) {
  if (!(t > 0.0)) throw std::domain_error("parabola_bm_density: t must be > 0");
  if (p.zeros.empty()) throw std::invalid_argument("parabola density: zeros not built");
  SeriesEval out = series_at(p, t);
  if (out.value < 0.0 && out.converged) out.value = std::max(out.value, 0.0);
  return out;
}

SeriesEval parabola_ou_density(const AirySeriesParams& p, double k, double t) {
  if (!(t > 0.0)) throw std::domain_error("parabola_ou_density: t must be > 0");
  SeriesEval out = series_at(p, r_time(k, t));
  out.value *= std::exp(2.0 * k * t);
  if (out.value < 0.0 && out.converged) out.value = std::max(out.value, 0.0);
  return out;
}

SeriesEval parabola_transformed_density(const AirySeriesParams& p,
                                        const TransformParams& tp, double t) {
  if (!(t > 0.0)) throw std::domain_error("parabola_transformed_density: t > 0");
  if (!(t < zeta_horizon(tp)))
    throw std::domain_error("parabola_transformed_density: t past zeta horizon");
  const double k = tp.k, alpha = tp.alpha, beta = tp.beta;
  const double r = r_time(k, t);
  const double den = 1.0 + alpha * beta * r;
  const double u = alpha * alpha * r / den;
  // S^{alpha,beta}_k g(t) = (den/alpha) e^{-kt} (a + b u^2)
  const double sg = den / alpha * std::exp(-k * t) *
                    (p.a_coef + p.b_coef * u * u);
  const double expo = -alpha * beta / (2.0 * den) * sg * sg * std::exp(2.0 * k * t);
  SeriesEval out = series_at(p, u);
  out.value *= std::exp(2.0 * k * t + expo) * alpha * alpha * std::pow(den, -1.5);
  return out;
}

Boundary parabola_boundary_bm(double a, double b) {
  return Boundary::from_function([a, b](double t) { return a + b * t * t; },
                                 std::numeric_limits<double>::infinity(),
                                 [b](double t) { return 2.0 * b * t; }, 1);
}

Boundary parabola_boundary_ou(double a, double b, double k) {
  auto eval = [a, b, k](double t) {
    const double r = r_time(k, t);
    return std::exp(-k * t) * (a + b * r * r);
  };
  auto deriv = [a, b, k](double t) {
    const double r = r_time(k, t);
    return std::exp(-k * t) *
           (2.0 * b * r * std::exp(2.0 * k * t) - k * (a + b * r * r));
  };
  return Boundary::from_function(eval, std::numeric_limits<double>::infinity(), deriv, 1);
}

Boundary hyperbolic_family(double A, double B, double k) {
  if (A + B == 0.0)
    throw std::invalid_argument("hyperbolic_family: A + B must be nonzero");
  auto eval = [A, B, k](double t) {
    return A * std::exp(k * t) + B * std::exp(-k * t);
  };
  auto deriv = [A, B, k](double t) {
    return k * (A * std::exp(k * t) - B * std::exp(-k * t));
  };
  return Boundary::from_function(eval, std::numeric_limits<double>::infinity(), deriv,
                                 A + B > 0.0 ? 1 : -1);
}

HyperbolicFit fit_hyperbolic(const Boundary& g, double k,
                             std::span<const double> probes) {
  // normal equations for g ~ A e^{kt} + B e^{-kt}
  double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (const double t : probes) {
    const double e1 = std::exp(k * t), e2 = std::exp(-k * t), gv = g(t);
    s11 += e1 * e1;
    s12 += e1 * e2;
    s22 += e2 * e2;
    b1 += e1 * gv;
    b2 += e2 * gv;
  }
  const double det = s11 * s22 - s12 * s12;
  if (det == 0.0) throw std::runtime_error("fit_hyperbolic: singular system");
  HyperbolicFit fit;
  fit.A = (b1 * s22 - b2 * s12) / det;
  fit.B = (s11 * b2 - s12 * b1) / det;
  for (const double t : probes) {
    const double r = std::abs(g(t) - fit.A * std::exp(k * t) - fit.B * std::exp(-k * t));
    fit.residual = std::max(fit.residual, r);
  }
  return fit;
}

}  // namespace oufpt
