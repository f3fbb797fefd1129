#include "oufpt/gauss_markov.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oufpt/grid_io.hpp"
#include "oufpt/parallel.hpp"
#include "oufpt/rng.hpp"
#include "oufpt/transforms.hpp"

namespace oufpt {

void GMParams::validate() const {
  if (!phi.valid()) throw std::invalid_argument("GMParams: phi required");
  if (std::abs(phi(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("GMParams: phi(0) = 1 required");
  if (phi.sign() < 0) throw std::invalid_argument("GMParams: phi must be positive");
}

PathEnsemble gm_sample_paths(const GMParams& p, double dt, double horizon,
                             std::size_t n, int threads) {
  p.validate();
  if (!(dt > 0.0) || !(horizon > dt)) throw std::invalid_argument("gm_sample_paths: grid");
  const std::size_t steps = static_cast<std::size_t>(std::llround(horizon / dt));
  PathEnsemble out;
  out.times.resize(steps);
  std::vector<double> scale(steps), sd(steps);
  double tau_prev = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = (i + 1) * dt;
    out.times[i] = t;
    const double tau_t = p.phi.tau(t);
    sd[i] = std::sqrt(tau_t - tau_prev);
    scale[i] = p.phi(t) * std::exp(p.k * t);
    tau_prev = tau_t;
  }
  out.values.assign(n, std::vector<double>(steps));
  parallel_chunks(n, resolve_thread_count(threads), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      PathRng rng(p.seed, path);
      double w = 0.0;
      for (std::size_t i = 0; i < steps; ++i) {
        w += sd[i] * rng.normal();
        out.values[path][i] = scale[i] * (p.x0 + w);
      }
    }
  });
  return out;
}

std::string MartingaleReport::to_json() const {
  std::ostringstream os;
  os << "{\n  \"checkpoints\": [\n";
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const auto& c = checkpoints[i];
    os << "    {\"t\": " << format_double(c.t) << ", \"mean\": " << format_double(c.mean)
       << ", \"half_width\": " << format_double(c.half_width)
       << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
       << (i + 1 < checkpoints.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"verdict\": \"" << (pass ? "pass" : "fail") << "\"\n}\n";
  return os.str();
}

MartingaleReport martingale_check(const GMParams& p, double alpha, double beta,
                                  double dt, double horizon, std::size_t n) {
  p.validate();
  if (alpha == 0.0) throw std::invalid_argument("martingale_check: alpha nonzero");
  const std::vector<double> checkpoints = {0.25 * horizon, 0.5 * horizon, 0.75 * horizon,
                                           horizon};
  // H needs alpha + beta tau phi > 0 up to the horizon
  const double tau_h = p.phi.tau(horizon);
  if (alpha + beta * tau_h <= 0.0)
    throw std::domain_error("martingale_check: alpha + beta tau phi <= 0 on horizon");

  const PathEnsemble ens = gm_sample_paths(p, dt, horizon, n);
  MartingaleReport rep;
  rep.pass = true;
  for (const double tc : checkpoints) {
    // nearest grid node
    std::size_t idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ens.times.size(); ++i) {
      const double d = std::abs(ens.times[i] - tc);
      if (d < best) {
        best = d;
        idx = i;
      }
    }
    const double t = ens.times[idx];
    const double phi_t = p.phi(t);
    const double pi_phi = phi_t * (alpha + beta * p.phi.tau(t));
    const double pre = std::sqrt(alpha * phi_t / pi_phi);
    const double expo_scale = 0.5 * beta * std::exp(-2.0 * p.k * t) / (phi_t * pi_phi);
    double sum = 0.0, sum2 = 0.0;
    for (const auto& path : ens.values) {
      const double x = path[idx];
      const double hval = pre * std::exp(expo_scale * x * x);
      sum += hval;
      sum2 += hval * hval;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    CheckpointStat st;
    st.t = t;
    st.mean = mean;
    st.half_width = 3.0 * std::sqrt(var / n);
    st.pass = std::abs(mean - 1.0) <= st.half_width;
    rep.pass = rep.pass && st.pass;
    rep.checkpoints.push_back(st);
  }
  return rep;
}

std::string TimechangeFptReport::to_json() const {
  std::ostringstream os;
  os << "{\"ks\": " << format_double(ks) << ", \"critical\": " << format_double(critical)
     << ", \"hit_rate_direct\": " << format_double(hit_rate_direct)
     << ", \"hit_rate_mapped\": " << format_double(hit_rate_mapped)
     << ", \"mapped_horizon\": " << format_double(mapped_horizon)
     << ", \"verdict\": \"" << (pass ? "pass" : "fail") << "\"}\n";
  return os.str();
}

TimechangeFptReport timechange_fpt_check(const Boundary& f, double k, const MCConfig& cfg) {
  cfg.validate();
  const Boundary phi = sigma_k(f, k);
  const double r_h = r_time(k, cfg.horizon);
  const double t_star = phi.tau_inverse(r_h);

  TimechangeFptReport rep;
  rep.mapped_horizon = t_star;

  // direct side
  OUParams params{k, 12345};
  const std::vector<double> direct = fpt_sample_times(params, f, cfg);

  // indirect side: Y_t = phi(t) e^{kt} W_{tau phi(t)} hits level 1, on a
  // t-uniform grid with the bridge correction in the tau-phi clock
  const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  const double dts = t_star / static_cast<double>(steps);
  std::vector<double> du(steps), cw(steps), tmid(steps);
  {
    double tau_prev = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double t = (i + 1) * dts;
      const double tau_t = phi.tau(t);
      du[i] = tau_t - tau_prev;
      cw[i] = std::exp(-k * t) / phi(t);  // W-scale boundary
      // crossing attributed to the OU-time image of the subinterval midpoint
      tmid[i] = s_time(k, phi.tau(t - 0.5 * dts));
      tau_prev = tau_t;
    }
  }
  std::vector<double> mapped(cfg.n_paths);
  const double c0 = 1.0 / phi(0.0);
  parallel_chunks(cfg.n_paths, resolve_thread_count(cfg.threads),
                  [&](int, std::size_t lo, std::size_t hi) {
                    for (std::size_t pth = lo; pth < hi; ++pth) {
                      PathRng rng(98765, pth);
                      double w = 0.0, dprev = c0;
                      double hit = std::numeric_limits<double>::infinity();
                      for (std::size_t i = 0; i < steps; ++i) {
                        w += std::sqrt(du[i]) * rng.normal();
                        const double d = cw[i] - w;
                        if (d <= 0.0) {
                          hit = tmid[i];
                          break;
                        }
                        const double ex = -2.0 * dprev * d / du[i];
                        if (ex > -40.0 && rng.uniform() < std::exp(ex)) {
                          hit = tmid[i];
                          break;
                        }
                        dprev = d;
                      }
                      mapped[pth] = hit;
                    }
                  });

  std::size_t nd = 0, nm = 0;
  for (double v : direct) nd += std::isfinite(v) ? 1 : 0;
  for (double v : mapped) nm += std::isfinite(v) ? 1 : 0;
  rep.hit_rate_direct = static_cast<double>(nd) / cfg.n_paths;
  rep.hit_rate_mapped = static_cast<double>(nm) / cfg.n_paths;
  rep.ks = ks_statistic(direct, mapped);
  rep.critical = ks_critical_value(0.01, cfg.n_paths, cfg.n_paths);
  rep.pass = rep.ks < rep.critical;
  return rep;
}

}  // namespace oufpt
