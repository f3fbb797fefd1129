#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "oufpt/boundary.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

struct MCConfig {
  std::size_t n_paths = 100000;
  double dt = 1e-3;
  double horizon = 1.0;
  std::size_t bins = 200;
  double confidence = 0.9973002039367398;  // two-sided 3 sigma
  int threads = 0;                         // 0 = OU_FPT_THREADS / hardware
  void validate() const;                   // dt <= horizon/100, n_paths >= 1e3, ...
};

/// Histogram estimate of a first-passage law on [0, horizon].
struct DensityGrid {
  std::vector<double> t_edges;     // bins + 1
  std::vector<double> density;     // per-bin density estimate
  std::vector<double> half_width;  // confidence half-width of each density value
  double survival_at_horizon = 1.0;
  double confidence = 0.9973002039367398;
  std::size_t n_paths = 0;

  double bin_width() const { return t_edges[1] - t_edges[0]; }
  double z_value() const;                     // quantile matching `confidence`
  double sigma(std::size_t bin) const;        // one-standard-error of density[bin]
};

/// One-sided FPT of the OU process started at 0 to the boundary f. Exact
/// transition sampling on the dt-grid plus the Brownian-bridge crossing
/// correction applied to the Lambda_k-transformed path in r-time; crossings
/// are attributed to subinterval midpoints.
DensityGrid fpt_sample(const OUParams& params, const Boundary& f, const MCConfig& cfg);

/// Raw crossing times (+inf for paths that survive to the horizon).
std::vector<double> fpt_sample_times(const OUParams& params, const Boundary& f,
                                     const MCConfig& cfg);

/// Two-sided exit from (f_minus, f_plus); bridge correction is the clipped
/// union bound of the two one-sided probabilities.
DensityGrid fpt_two_sided_sample(const OUParams& params, const Boundary& f_plus,
                                 const Boundary& f_minus, const MCConfig& cfg);
std::vector<double> fpt_two_sided_sample_times(const OUParams& params,
                                               const Boundary& f_plus,
                                               const Boundary& f_minus,
                                               const MCConfig& cfg);

struct TwoSidedExit {
  double time = std::numeric_limits<double>::infinity();
  int side = 0;  // +1 exit through f_plus, -1 through f_minus, 0 survived
};

/// Exit times together with the exit side (the bridge-corrected side is the
/// one whose crossing fired).
std::vector<TwoSidedExit> fpt_two_sided_sample_exits(const OUParams& params,
                                                     const Boundary& f_plus,
                                                     const Boundary& f_minus,
                                                     const MCConfig& cfg);

DensityGrid histogram_from_times(std::span<const double> times, std::size_t bins,
                                 double horizon, double confidence);

/// 1 - cumulative mass up to t (piecewise-linear within the containing bin).
double survival_probability(const DensityGrid& grid, double t);

/// Two-sample KS distance between censored samples; +inf entries count toward
/// the totals but never toward the CDFs.
double ks_statistic(std::span<const double> a, std::span<const double> b);
/// Critical value c(level) sqrt((n+m)/(n m)), c = sqrt(-ln(level/2)/2).
double ks_critical_value(double level, std::size_t n, std::size_t m);

}  // namespace oufpt
