#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oufpt/gauss_markov.hpp"

namespace oufpt {

/// OU bridge from a to b over [0, T].
struct BridgeSpec {
  double a = 0.0;
  double b = 0.0;
  double T = 1.0;
  double k = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// E[U^br_t] = a sinh(k(T-t))/sinh(kT) + b sinh(kt)/sinh(kT).
double bridge_mean(const BridgeSpec& spec, double t);
/// Cov(U^br_s, U^br_t) = sinh(ks) sinh(k(T-t)) / (k sinh(kT)), s <= t.
double bridge_cov(const BridgeSpec& spec, double s, double t);

/// Space-time representation: BM sampled at the clock r(T) r(t)/(r(T)-r(t)).
PathEnsemble bridge_sample_st(const BridgeSpec& spec, double dt, std::size_t n);
/// Anticipative representation from a full OU path and its endpoint.
PathEnsemble bridge_sample_av(const BridgeSpec& spec, double dt, std::size_t n);
/// Euler on the bridge SDE; the terminal layer (last 5 steps) uses the exact
/// pinned Gaussian conditional instead of the singular drift.
PathEnsemble bridge_sample_ir(const BridgeSpec& spec, double dt, std::size_t n);

struct MomentCheckRow {
  std::string kind;  // "mean" or "cov"
  double s = 0.0, t = 0.0;
  double sample = 0.0, expected = 0.0, half_width = 0.0;
  bool pass = false;
};

struct BridgeCheckReport {
  std::vector<MomentCheckRow> rows;
  bool pass = false;
  std::string to_json() const;
};

/// Ensemble mean and covariance against the sinh forms at {T/4, T/2, 3T/4},
/// 3 sigma bands.
BridgeCheckReport bridge_moments_check(const BridgeSpec& spec, const PathEnsemble& ens);

/// Applies the S^{1,-1/r(T)}_k pathwise prefactor to exact OU samples
/// (a = b = 0) and checks the bridge covariance at {T/4, T/2, 3T/4}.
BridgeCheckReport bridge_transform_check(double T, double k, double dt, std::size_t n,
                                         std::uint64_t seed = 1);

/// Streams path_id,t,value rows.
void ensemble_to_csv(std::ostream& os, const PathEnsemble& ens);

}  // namespace oufpt
