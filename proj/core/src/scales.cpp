#include "oufpt/scales.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oufpt/rng.hpp"

namespace oufpt {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double rate_horizon(double k) { return k < 0.0 ? -1.0 / (2.0 * k) : kInf; }

double r_time(double k, double t) {
  if (!(t >= 0.0)) throw std::domain_error("r_time: t must be >= 0");
  if (2.0 * k * t > 700.0) throw std::range_error("r_time: 2kt > 700 overflows");
  if (std::abs(k) < kSmallRate) {
    // (e^{2kt}-1)/2k = t (1 + kt + (2/3)k^2 t^2 + (1/3)k^3 t^3 + ...)
    const double kt = k * t;
    return t * (1.0 + kt * (1.0 + kt * (2.0 / 3.0 + kt * (1.0 / 3.0))));
  }
  return std::expm1(2.0 * k * t) / (2.0 * k);
}

double s_time(double k, double t) {
  const double arg = 2.0 * k * t;
  if (arg <= -1.0) throw std::domain_error("s_time: 2kt + 1 <= 0");
  if (std::abs(k) < kSmallRate) {
    // ln(1+2kt)/2k = t (1 - kt + (4/3)k^2 t^2 - 2 k^3 t^3 + ...)
    const double kt = k * t;
    return t * (1.0 - kt * (1.0 - kt * (4.0 / 3.0 - kt * 2.0)));
  }
  return std::log1p(arg) / (2.0 * k);
}

double step_variance(double k, double dt) {
  if (std::abs(k) < kSmallRate) {
    const double kdt = k * dt;
    return dt * (1.0 - kdt * (1.0 - kdt * (2.0 / 3.0 - kdt * (1.0 / 3.0))));
  }
  return -std::expm1(-2.0 * k * dt) / (2.0 * k);
}

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double inverse_norm_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_norm_cdf: p in (0,1)");
  // bisection start, Newton polish
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm_cdf(mid) < p ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double err = norm_cdf(z) - p;
    const double d = norm_pdf(z);
    if (d <= 0.0) break;
    z -= err / d;
  }
  return z;
}

double transition_density(double k, double x, double y, double t) {
  if (!(t > 0.0)) throw std::domain_error("transition_density: t must be > 0");
  const double rt = r_time(k, t);
  const double ekt = std::exp(k * t);
  return ekt / std::sqrt(rt) * norm_pdf((y * ekt - x) / std::sqrt(rt));
}

std::vector<double> sample_transition(const OUParams& params, double x, double dt,
                                      std::size_t n) {
  if (!(dt > 0.0)) throw std::domain_error("sample_transition: dt must be > 0");
  const double mean_factor = std::exp(-params.k * dt);
  const double sd = std::sqrt(step_variance(params.k, dt));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    PathRng rng(params.seed, i);
    out[i] = x * mean_factor + sd * rng.normal();
  }
  return out;
}

double sinh_ratio(double k, double num_arg, double den_arg) {
  if (std::abs(k * den_arg) < 1e-8) {
    // sinh(ka)/sinh(kb) = (a/b)(1 + k^2 (a^2 - b^2)/6 + O(k^4))
    return num_arg / den_arg *
           (1.0 + k * k * (num_arg * num_arg - den_arg * den_arg) / 6.0);
  }
  return std::sinh(k * num_arg) / std::sinh(k * den_arg);
}

double k_coth(double k, double x) {
  if (std::abs(k * x) < 1e-8) return 1.0 / x + k * k * x / 3.0;
  return k * std::cosh(k * x) / std::sinh(k * x);
}

double k_over_sinh(double k, double x) {
  if (std::abs(k * x) < 1e-8) return 1.0 / x - k * k * x / 6.0;
  return k / std::sinh(k * x);
}

double sinh_over_k(double k, double x) {
  if (std::abs(k * x) < 1e-8) return x * (1.0 + k * k * x * x / 6.0);
  return std::sinh(k * x) / k;
}

}  // namespace oufpt
