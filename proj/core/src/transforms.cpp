#include "oufpt/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "oufpt/roots.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int sgn_nonzero(double x) { return x >= 0.0 ? 1 : -1; }

void require_alpha(const TransformParams& p) {
  if (p.alpha == 0.0) throw std::invalid_argument("TransformParams: alpha must be nonzero");
}

// r(t) with the overflow mapped to +inf (used only for domain bookkeeping).
double r_or_inf(double k, double t) {
  if (!std::isfinite(t)) return k < 0.0 ? rate_horizon(k) : kInf;
  if (2.0 * k * t > 690.0) return kInf;
  return r_time(k, t);
}

// s(t) as a domain endpoint: +inf when t is out of s's reach for k < 0.
double s_or_inf(double k, double t) {
  if (!std::isfinite(t)) return k <= 0.0 ? kInf : kInf;
  if (2.0 * k * t <= -1.0) return kInf;
  return s_time(k, t);
}
}  // namespace

double zeta_horizon(const TransformParams& p) {
  require_alpha(p);
  const double ab = p.alpha * p.beta;
  if (ab < 0.0 && p.k >= 0.0) return s_time(p.k, -1.0 / ab);
  if (p.k < 0.0) {
    const double den = ab + 2.0 * p.k * p.alpha * p.alpha;
    if (den != 0.0) {
      const double ratio = 2.0 * p.k / den;
      if (ratio > 0.0 && ratio < 1.0) return s_time(p.k, -1.0 / den);
    }
  }
  return kInf;
}

Boundary lambda_k(const Boundary& f, double k) {
  const double fde = f.domain_end();
  double de = std::isfinite(fde) ? r_or_inf(k, fde) : (k < 0.0 ? rate_horizon(k) : kInf);
  auto eval = [f, k](double t) {
    const double st = s_time(k, t);
    return std::exp(k * st) * f(st);
  };
  std::function<double(double)> deriv;
  if (f.has_analytic_deriv()) {
    deriv = [f, k](double t) {
      const double st = s_time(k, t);
      return std::exp(k * st) * (k * f(st) + f.deriv(st)) / (2.0 * k * t + 1.0);
    };
  }
  return Boundary::from_function(std::move(eval), de, std::move(deriv), f.sign());
}

Boundary lambda_k_inv(const Boundary& f, double k) {
  const double fde = f.domain_end();
  double de = kInf;
  if (std::isfinite(fde)) de = s_or_inf(k, fde);
  auto eval = [f, k](double t) { return std::exp(-k * t) * f(r_time(k, t)); };
  std::function<double(double)> deriv;
  if (f.has_analytic_deriv()) {
    deriv = [f, k](double t) {
      const double rt = r_time(k, t);
      return std::exp(-k * t) * (std::exp(2.0 * k * t) * f.deriv(rt) - k * f(rt));
    };
  }
  return Boundary::from_function(std::move(eval), de, std::move(deriv), f.sign());
}

Boundary sigma_k(const Boundary& f, double k) {
  const double tau_sup = f.tau_sup();
  double de;
  if (k >= 0.0) {
    de = s_or_inf(k, tau_sup);
  } else {
    de = tau_sup < rate_horizon(k) ? s_time(k, tau_sup) : kInf;
  }
  const int sign = f.sign();
  auto eval = [f, k, sign](double t) {
    const double q = f.tau_inverse(r_time(k, t));
    return sign * std::exp(-k * (q + t)) / std::abs(f(q));
  };
  return Boundary::from_function(std::move(eval), de, nullptr, sign);
}

Boundary pi_ab(const Boundary& f, double alpha, double beta) {
  if (alpha == 0.0 && beta == 0.0)
    throw std::invalid_argument("pi_ab: alpha and beta cannot both vanish");
  double de = f.domain_end();
  if (beta != 0.0) {
    const double tau_zero = -alpha / beta;
    if (tau_zero > 0.0 && f.tau_reaches(tau_zero))
      de = std::min(de, f.tau_inverse(tau_zero));
  }
  const int sign = f.sign();
  auto eval = [f, alpha, beta, sign](double t) {
    return sign * std::abs(f(t)) * (alpha + beta * f.tau(t));
  };
  const int out_sign = sign * (alpha != 0.0 ? sgn_nonzero(alpha) : sgn_nonzero(beta));
  return Boundary::from_function(std::move(eval), de, nullptr, out_sign);
}

namespace {

double pullback_domain(const Boundary& f, const TransformParams& p) {
  // largest t with s(alpha^2 r(t)/(1+alpha beta r(t))) < f.domain_end
  const double fde = f.domain_end();
  if (!std::isfinite(fde)) return kInf;
  const double R = r_or_inf(p.k, fde);
  const double ab = p.alpha * p.beta;
  if (!std::isfinite(R)) {
    // u -> R needs alpha^2 - R alpha beta > 0; for R = inf only ab < 0 binds,
    // and then the constraint coincides with zeta.
    return kInf;
  }
  const double den = p.alpha * p.alpha - R * ab;
  if (den <= 0.0) return kInf;
  const double r_star = R / den;
  if (p.k < 0.0 && r_star >= rate_horizon(p.k)) return kInf;
  return s_time(p.k, r_star);
}

}  // namespace

Boundary s_transform(const Boundary& f, const TransformParams& p) {
  require_alpha(p);
  const double de = std::min(zeta_horizon(p), pullback_domain(f, p));
  const double alpha = p.alpha, beta = p.beta, k = p.k;
  auto eval = [f, alpha, beta, k](double t) {
    const double r = r_time(k, t);
    const double den = 1.0 + alpha * beta * r;
    if (den <= 0.0) throw std::domain_error("s_transform: past zeta horizon");
    const double u = alpha * alpha * r / den;
    const double two_ku = 2.0 * k * u + 1.0;
    if (two_ku <= 0.0) throw std::domain_error("s_transform: mapped time out of range");
    return den / alpha * std::sqrt(two_ku) * std::exp(-k * t) * f(s_time(k, u));
  };
  return Boundary::from_function(std::move(eval), de, nullptr,
                                 f.sign() * sgn_nonzero(p.alpha));
}

Boundary s_transform_via_sigma(const Boundary& f, const TransformParams& p) {
  require_alpha(p);
  return sigma_k(pi_ab(sigma_k(f, p.k), p.alpha, -p.beta), p.k);
}

Boundary s_transform_via_lambda(const Boundary& f, const TransformParams& p) {
  require_alpha(p);
  return lambda_k_inv(s_transform(lambda_k(f, p.k), {p.alpha, p.beta, 0.0}), p.k);
}

TransformParams compose_transforms(const TransformParams& outer,
                                   const TransformParams& inner) {
  require_alpha(outer);
  require_alpha(inner);
  if (outer.k != inner.k)
    throw std::invalid_argument("compose_transforms: transforms must share k");
  return {outer.alpha * inner.alpha, outer.alpha * inner.beta + outer.beta / inner.alpha,
          outer.k};
}

MappedSpaceTag space_tag_map(const SpaceTag& tag, const TransformParams& p) {
  require_alpha(p);
  const double a = tag.a, b = tag.b, k = p.k;
  const double ab = p.alpha * p.beta, a2 = p.alpha * p.alpha;
  MappedSpaceTag out;

  if (k >= 0.0 && a2 - ab * a > 0.0) {
    out.a = a / (a2 - ab * a);
  } else if (k < 0.0) {
    const double den = a2 - (ab + 2.0 * k * a2) * a;
    const double ratio = 2.0 * k * a / ((ab + 2.0 * k * a2) * a - a2);
    out.a = (ratio > 0.0 && ratio < 1.0) ? a / den : kInf;
  } else {
    out.a = kInf;
  }

  if (k >= 0.0 && a2 - ab * b > 0.0) {
    out.b = b;
  } else if (k < 0.0) {
    const double ratio = 2.0 * k * b / ((ab + 2.0 * k * a2) * b - a2);
    if (ratio > 0.0 && ratio < 1.0) out.b = b / (1.0 - 2.0 * k * b);
    // otherwise: rho.tau f(s(alpha/beta)), which needs f; left undefined here
  }
  return out;
}

double space_tag_b(const Boundary& f, double k, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("space_tag_b: a must be > 0");
  const double sg = k >= 0.0 ? 1.0 : -1.0;
  const double lhs = f.tau(sg * s_time(k, sg * a));
  return k >= 0.0 ? lhs : lhs / (1.0 + 2.0 * k * lhs);
}

double nonlinear_ode_residual(const Boundary& f,
                              const std::function<double(double)>& mu, double k,
                              double t) {
  const double fv = f(t);
  const double fpp = f.second_deriv(t);
  const double tf = f.tau(t);
  const double lhs = fv * fv * fv * fpp - k * k * fv * fv * fv * fv;
  const double den = 2.0 * k * tf + 1.0;
  const double rhs = (-mu(s_time(k, tf)) + k * k) / (den * den);
  return lhs - rhs;
}

double rho_inverse(const std::function<double(double)>& g, double y, double lo,
                   double hi0) {
  return inverse_monotone(g, y, lo, hi0);
}

}  // namespace oufpt
