#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oufpt/boundary.hpp"
#include "oufpt/mc.hpp"

namespace oufpt {

/// Generalized Gauss-Markov process of OU type:
/// X_t = phi(t) e^{kt} (x0 + int_0^t phi(s)^{-1} dB_s).
struct GMParams {
  Boundary phi;  // positive, phi(0) = 1 (checked)
  double k = 0.0;
  double x0 = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PathEnsemble {
  std::vector<double> times;                // node times t_1..t_n
  std::vector<std::vector<double>> values;  // values[path][node]
};

/// Exact simulation on the dt-grid: Gaussian increments of int phi^{-1} dB
/// with per-step variance tau phi(t_{i+1}) - tau phi(t_i).
PathEnsemble gm_sample_paths(const GMParams& p, double dt, double horizon,
                             std::size_t n, int threads = 0);

struct CheckpointStat {
  double t = 0.0;
  double mean = 0.0;
  double half_width = 0.0;  // 3 sigma band of the mean estimate
  bool pass = false;
};

struct MartingaleReport {
  std::vector<CheckpointStat> checkpoints;
  bool pass = false;
  std::string to_json() const;
};

/// E[H_t^k(X_t)] = 1 at the quartile checkpoints of the horizon, with
/// H_t^k(x) = sqrt(alpha phi / Pi^{alpha,beta} phi)
///            exp(beta x^2 e^{-2kt} / (2 phi Pi^{alpha,beta} phi)).
MartingaleReport martingale_check(const GMParams& p, double alpha, double beta,
                                  double dt, double horizon, std::size_t n);

struct TimechangeFptReport {
  double ks = 0.0;
  double critical = 0.0;  // 1% two-sample KS critical value
  double hit_rate_direct = 0.0;
  double hit_rate_mapped = 0.0;
  double mapped_horizon = 0.0;  // rho.tau phi(r(horizon))
  bool pass = false;
  std::string to_json() const;
};

/// Compares direct MC of T_k^f with s(tau phi(T_1)), phi = Sigma_k f, where
/// T_1 is the level-1 hitting time of phi(t) e^{kt} int phi^{-1} dB.
TimechangeFptReport timechange_fpt_check(const Boundary& f, double k, const MCConfig& cfg);

}  // namespace oufpt
