#pragma once

#include <cstdint>
#include <vector>

namespace oufpt {

inline constexpr const char* kVersion = "0.1.0";

/// |k| below this threshold switches r/s to their k->0 series so both
/// functions stay continuous through k = 0.
inline constexpr double kSmallRate = 1e-10;

struct OUParams {
  double k = 0.0;          // mean-reversion rate, may be negative
  std::uint64_t seed = 0;  // RNG stream id
};

/// Finite-horizon cutoff zeta^{(k)}: -1/(2k) for k < 0, +inf otherwise.
double rate_horizon(double k);

/// r(t) = (e^{2kt} - 1) / 2k, the Brownian clock of the OU process.
/// Throws std::range_error when 2kt > 700 (overflow) and
/// std::domain_error for t < 0.
double r_time(double k, double t);

/// s(t) = ln(2kt + 1) / 2k, inverse of r. Throws std::domain_error when
/// 2kt + 1 <= 0.
double s_time(double k, double t);

/// Variance of U_{t+dt} | U_t, i.e. e^{-2k dt} r(dt) = (1 - e^{-2k dt}) / 2k.
double step_variance(double k, double dt);

/// Standard normal density.
double norm_pdf(double z);

/// Standard normal CDF.
double norm_cdf(double z);

/// Inverse standard normal CDF (Newton on std::erfc; ~1e-14 accurate).
double inverse_norm_cdf(double p);

/// OU transition density p_t(x, y) = e^{kt}/sqrt(r(t)) phi((y e^{kt} - x)/sqrt(r(t))).
/// Throws std::domain_error for t <= 0.
double transition_density(double k, double x, double y, double t);

/// Exact OU increments: n draws of U_{t+dt} | U_t = x, Gaussian with mean
/// x e^{-k dt} and variance step_variance(k, dt). Stream `params.seed`.
std::vector<double> sample_transition(const OUParams& params, double x, double dt,
                                      std::size_t n);

// sinh-ratio helpers used by the bridge representations; stable through k = 0.
double sinh_ratio(double k, double num_arg, double den_arg);  // sinh(k a)/sinh(k b)
double k_coth(double k, double x);                            // k coth(k x)
double k_over_sinh(double k, double x);                       // k / sinh(k x)
double sinh_over_k(double k, double x);                       // sinh(k x) / k

}  // namespace oufpt
