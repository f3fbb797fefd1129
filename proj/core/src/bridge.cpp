#include "oufpt/bridge.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oufpt/grid_io.hpp"
#include "oufpt/parallel.hpp"
#include "oufpt/rng.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

void BridgeSpec::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("BridgeSpec: T > 0 required");
  if (k < 0.0 && T >= rate_horizon(k))
    throw std::invalid_argument("BridgeSpec: T < zeta^{(k)} required for k < 0");
}

double bridge_mean(const BridgeSpec& spec, double t) {
  return spec.a * sinh_ratio(spec.k, spec.T - t, spec.T) +
         spec.b * sinh_ratio(spec.k, t, spec.T);
}

double bridge_cov(const BridgeSpec& spec, double s, double t) {
  if (s > t) std::swap(s, t);
  // sinh(ks) sinh(k(T-t)) / (k sinh(kT))
  return sinh_over_k(spec.k, s) * sinh_ratio(spec.k, spec.T - t, spec.T);
}

namespace {

std::vector<double> make_times(double T, double dt) {
  const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
  if (steps < 10) throw std::invalid_argument("bridge: dt too coarse (need T/dt >= 10)");
  std::vector<double> times(steps);
  for (std::size_t i = 0; i < steps; ++i) times[i] = (i + 1) * dt;
  times.back() = T;
  return times;
}

}  // namespace

PathEnsemble bridge_sample_st(const BridgeSpec& spec, double dt, std::size_t n) {
  spec.validate();
  PathEnsemble out;
  out.times = make_times(spec.T, dt);
  const std::size_t steps = out.times.size();
  const double rT = r_time(spec.k, spec.T);
  std::vector<double> mean(steps), damp(steps), dclock(steps);
  double c_prev = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = out.times[i];
    mean[i] = bridge_mean(spec, t);
    if (i + 1 == steps) {  // pinned endpoint
      damp[i] = 0.0;
      dclock[i] = 0.0;
      continue;
    }
    const double rt = r_time(spec.k, t);
    const double clock = rT * rt / (rT - rt);
    damp[i] = std::exp(-spec.k * t) * (rT - rt) / rT;
    dclock[i] = clock - c_prev;
    c_prev = clock;
  }
  out.values.assign(n, std::vector<double>(steps));
  parallel_chunks(n, resolve_thread_count(0), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      PathRng rng(spec.seed, path);
      double w = 0.0;
      for (std::size_t i = 0; i < steps; ++i) {
        if (i + 1 == steps) {
          out.values[path][i] = spec.b;
          break;
        }
        w += std::sqrt(dclock[i]) * rng.normal();
        out.values[path][i] = mean[i] + damp[i] * w;
      }
    }
  });
  return out;
}

PathEnsemble bridge_sample_av(const BridgeSpec& spec, double dt, std::size_t n) {
  spec.validate();
  PathEnsemble out;
  out.times = make_times(spec.T, dt);
  const std::size_t steps = out.times.size();
  std::vector<double> mean(steps), ratio(steps), du(steps), ekt(steps);
  double r_prev = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = out.times[i];
    mean[i] = bridge_mean(spec, t);
    ratio[i] = sinh_ratio(spec.k, t, spec.T);
    const double rt = r_time(spec.k, t);
    du[i] = rt - r_prev;
    ekt[i] = std::exp(-spec.k * t);
    r_prev = rt;
  }
  out.values.assign(n, std::vector<double>(steps));
  parallel_chunks(n, resolve_thread_count(0), [&](int, std::size_t lo, std::size_t hi) {
    std::vector<double> u(steps);
    for (std::size_t path = lo; path < hi; ++path) {
      PathRng rng(spec.seed, path);
      double w = 0.0;
      for (std::size_t i = 0; i < steps; ++i) {
        w += std::sqrt(du[i]) * rng.normal();
        u[i] = ekt[i] * w;  // exact OU path from 0
      }
      const double uT = u[steps - 1];
      for (std::size_t i = 0; i < steps; ++i)
        out.values[path][i] = mean[i] + (u[i] - ratio[i] * uT);
    }
  });
  return out;
}

PathEnsemble bridge_sample_ir(const BridgeSpec& spec, double dt, std::size_t n) {
  spec.validate();
  if (!(dt < spec.T / 100.0))
    throw std::invalid_argument("bridge_sample_ir: dt < T/100 required near the singular drift");
  PathEnsemble out;
  out.times = make_times(spec.T, dt);
  const std::size_t steps = out.times.size();
  const std::size_t exact_tail = 5;  // pinned Gaussian conditional for the last steps
  out.values.assign(n, std::vector<double>(steps));
  const double k = spec.k, b = spec.b;
  parallel_chunks(n, resolve_thread_count(0), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      PathRng rng(spec.seed, path);
      double x = spec.a;
      double t_prev = 0.0;
      for (std::size_t i = 0; i < steps; ++i) {
        const double t = out.times[i];
        const double h = t - t_prev;
        const double rem = spec.T - t_prev;
        if (i + 1 == steps) {
          x = b;
        } else if (steps - i <= exact_tail) {
          const double m = x * sinh_ratio(k, rem - h, rem) + b * sinh_ratio(k, h, rem);
          const double v = sinh_over_k(k, h) * sinh_ratio(k, rem - h, rem);
          x = m + std::sqrt(std::max(v, 0.0)) * rng.normal();
        } else {
          const double drift = -k_coth(k, rem) * x + b * k_over_sinh(k, rem);
          x += drift * h + std::sqrt(h) * rng.normal();
        }
        out.values[path][i] = x;
        t_prev = t;
      }
    }
  });
  return out;
}

std::string BridgeCheckReport::to_json() const {
  std::ostringstream os;
  os << "{\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << "    {\"kind\": \"" << r.kind << "\", \"s\": " << format_double(r.s)
       << ", \"t\": " << format_double(r.t) << ", \"sample\": " << format_double(r.sample)
       << ", \"expected\": " << format_double(r.expected)
       << ", \"half_width\": " << format_double(r.half_width)
       << ", \"pass\": " << (r.pass ? "true" : "false") << "}"
       << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"verdict\": \"" << (pass ? "pass" : "fail") << "\"\n}\n";
  return os.str();
}

namespace {

std::size_t nearest_index(const std::vector<double>& times, double t) {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double d = std::abs(times[i] - t);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

MomentCheckRow mean_row(const std::vector<double>& vals, double t, double expected) {
  const double n = static_cast<double>(vals.size());
  double sum = 0.0, sum2 = 0.0;
  for (double v : vals) {
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  MomentCheckRow row{"mean", t, t, mean, expected, 3.0 * std::sqrt(var / n), false};
  row.pass = std::abs(mean - expected) <= row.half_width;
  return row;
}

MomentCheckRow cov_row(const std::vector<double>& a, const std::vector<double>& b,
                       double s, double t, double expected) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = (a[i] - ma) * (b[i] - mb);
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  MomentCheckRow row{"cov", s, t, mean, expected, 3.0 * std::sqrt(var / n), false};
  row.pass = std::abs(mean - expected) <= row.half_width;
  return row;
}

}  // namespace

BridgeCheckReport bridge_moments_check(const BridgeSpec& spec, const PathEnsemble& ens) {
  const std::vector<double> checkpoints = {0.25 * spec.T, 0.5 * spec.T, 0.75 * spec.T};
  BridgeCheckReport rep;
  rep.pass = true;
  std::vector<std::size_t> idx;
  std::vector<std::vector<double>> slices;
  for (const double tc : checkpoints) {
    idx.push_back(nearest_index(ens.times, tc));
    std::vector<double> col(ens.values.size());
    for (std::size_t p = 0; p < ens.values.size(); ++p) col[p] = ens.values[p][idx.back()];
    slices.push_back(std::move(col));
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const double t = ens.times[idx[i]];
    rep.rows.push_back(mean_row(slices[i], t, bridge_mean(spec, t)));
    rep.pass = rep.pass && rep.rows.back().pass;
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    for (std::size_t j = i; j < checkpoints.size(); ++j) {
      const double s = ens.times[idx[i]], t = ens.times[idx[j]];
      rep.rows.push_back(cov_row(slices[i], slices[j], s, t, bridge_cov(spec, s, t)));
      rep.pass = rep.pass && rep.rows.back().pass;
    }
  }
  return rep;
}

BridgeCheckReport bridge_transform_check(double T, double k, double dt, std::size_t n,
                                         std::uint64_t seed) {
  BridgeSpec spec{0.0, 0.0, T, k, seed};
  spec.validate();
  const double rT = r_time(k, T);
  const double alpha = 1.0, beta = -1.0 / rT;
  const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
  if (steps < 8) throw std::invalid_argument("bridge_transform_check: dt too coarse");

  PathEnsemble ens;
  ens.times.resize(steps - 1);
  std::vector<double> du(steps - 1), pre(steps - 1), inv_sq(steps - 1);
  double u_prev = 0.0;
  for (std::size_t i = 0; i + 1 < steps; ++i) {
    const double t = (i + 1) * dt;
    ens.times[i] = t;
    const double r = r_time(k, t);
    const double den = 1.0 + alpha * beta * r;
    const double u = alpha * alpha * r / den;  // the S-map time substitution
    const double two_ku = 2.0 * k * u + 1.0;
    // prefactor (den/alpha) sqrt(2ku+1) e^{-kt}; OU value U(s(u)) = W_u / sqrt(2ku+1)
    pre[i] = den / alpha * std::sqrt(two_ku) * std::exp(-k * t);
    inv_sq[i] = 1.0 / std::sqrt(two_ku);
    du[i] = u - u_prev;
    u_prev = u;
  }
  ens.values.assign(n, std::vector<double>(steps - 1));
  parallel_chunks(n, resolve_thread_count(0), [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      PathRng rng(seed, path);
      double w = 0.0;
      for (std::size_t i = 0; i + 1 < steps; ++i) {
        w += std::sqrt(du[i]) * rng.normal();
        ens.values[path][i] = pre[i] * (w * inv_sq[i]);
      }
    }
  });
  BridgeCheckReport rep = bridge_moments_check(spec, ens);
  return rep;
}

void ensemble_to_csv(std::ostream& os, const PathEnsemble& ens) {
  os << "path_id,t,value\n";
  for (std::size_t p = 0; p < ens.values.size(); ++p)
    for (std::size_t i = 0; i < ens.times.size(); ++i)
      os << p << ',' << format_double(ens.times[i]) << ','
         << format_double(ens.values[p][i]) << "\n";
}

}  // namespace oufpt
