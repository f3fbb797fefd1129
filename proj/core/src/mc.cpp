#include "oufpt/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oufpt/parallel.hpp"
#include "oufpt/rng.hpp"

namespace oufpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Node-precomputed data shared by every path: the boundary and clock in the
// Lambda_k scale, where the path is an exact BM.
struct GridData {
  std::vector<double> t;        // t_1..t_n
  std::vector<double> du;       // r(t_i) - r(t_{i-1})
  std::vector<double> fw;       // f(t_i) e^{k t_i}, sign-normalized to +
  std::vector<double> fw_lo;    // two-sided lower boundary in W scale
  double fw0 = 0.0, fw0_lo = 0.0;
  bool two_sided = false;
};

GridData build_grid(const OUParams& params, const Boundary& f, const Boundary* f_minus,
                    const MCConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  if (n < 1) throw std::invalid_argument("fpt_sample: horizon/dt < 1");
  GridData g;
  g.t.resize(n);
  g.du.resize(n);
  g.fw.resize(n);
  const double r_dt = r_time(params.k, cfg.dt);
  const double flip = f.sign() >= 0 ? 1.0 : -1.0;
  const double f0 = f(0.0);
  if (f_minus == nullptr && flip * f0 <= 0.0)
    throw std::invalid_argument("fpt_sample: f(0) must be nonzero");
  g.fw0 = flip * f0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = (i + 1) * cfg.dt;
    g.t[i] = ti;
    g.du[i] = r_dt * std::exp(2.0 * params.k * (ti - cfg.dt));
    g.fw[i] = flip * f(ti) * std::exp(params.k * ti);
  }
  if (f_minus != nullptr) {
    g.two_sided = true;
    g.fw_lo.resize(n);
    const double fm0 = (*f_minus)(0.0);
    // touching starts (f(0) = 0, as for implicit boundaries with full-support
    // measures) are allowed; the first-interval bridge is then skipped since
    // the crossing probability of the frozen line is 1
    if (!(fm0 <= 0.0 && f0 >= 0.0))
      throw std::invalid_argument("two-sided: boundaries must straddle 0 at t = 0");
    g.fw0_lo = fm0;
    for (std::size_t i = 0; i < n; ++i)
      g.fw_lo[i] = (*f_minus)(g.t[i]) * std::exp(params.k * g.t[i]);
    if (!(g.fw_lo[0] < g.fw[0]))
      throw std::invalid_argument("two-sided: region empty at the first grid node");
  }
  return g;
}

// One path in the W clock; returns the crossing time (+inf for survivors)
// and the exit side. Crossings are placed uniformly inside their subinterval:
// a deterministic within-interval point would alias against histogram bins of
// comparable width.
TwoSidedExit run_path(const GridData& g, const MCConfig& cfg, std::uint64_t seed,
                      std::uint64_t path) {
  PathRng rng(seed, path);
  double w = 0.0;
  double d_up = g.fw0;         // distance to upper boundary, stays > 0 while alive
  double d_lo = w - g.fw0_lo;  // two-sided only
  const std::size_t n = g.t.size();
  for (std::size_t i = 0; i < n; ++i) {
    w += std::sqrt(g.du[i]) * rng.normal();
    const double up = g.fw[i] - w;
    if (up <= 0.0) return {g.t[i] - cfg.dt * rng.uniform(), +1};
    const double cross_exp = -2.0 * d_up * up / g.du[i];
    if (g.two_sided) {
      const double lo = w - g.fw_lo[i];
      if (lo <= 0.0) return {g.t[i] - cfg.dt * rng.uniform(), -1};
      const double p_up = (d_up > 0.0 && cross_exp > -40.0) ? std::exp(cross_exp) : 0.0;
      const double lo_exp = -2.0 * d_lo * lo / g.du[i];
      const double p_lo = (d_lo > 0.0 && lo_exp > -40.0) ? std::exp(lo_exp) : 0.0;
      if (p_up + p_lo > 0.0) {
        const double u = rng.uniform();
        if (u < p_up + p_lo)
          return {g.t[i] - cfg.dt * rng.uniform(), u < p_up ? +1 : -1};
      }
      d_lo = lo;
    } else {
      if (d_up > 0.0 && cross_exp > -40.0 && rng.uniform() < std::exp(cross_exp))
        return {g.t[i] - cfg.dt * rng.uniform(), +1};
    }
    d_up = up;
  }
  return {kInf, 0};
}

std::vector<TwoSidedExit> run_all_exits(const OUParams& params, const Boundary& f,
                                        const Boundary* f_minus, const MCConfig& cfg) {
  cfg.validate();
  const GridData g = build_grid(params, f, f_minus, cfg);
  std::vector<TwoSidedExit> exits(cfg.n_paths);
  parallel_chunks(cfg.n_paths, resolve_thread_count(cfg.threads),
                  [&](int, std::size_t lo, std::size_t hi) {
                    for (std::size_t p = lo; p < hi; ++p)
                      exits[p] = run_path(g, cfg, params.seed, p);
                  });
  return exits;
}

std::vector<double> run_all(const OUParams& params, const Boundary& f,
                            const Boundary* f_minus, const MCConfig& cfg) {
  const std::vector<TwoSidedExit> exits = run_all_exits(params, f, f_minus, cfg);
  std::vector<double> times(exits.size());
  for (std::size_t i = 0; i < exits.size(); ++i) times[i] = exits[i].time;
  return times;
}

}  // namespace

void MCConfig::validate() const {
  if (n_paths < 1000) throw std::invalid_argument("MCConfig: n_paths >= 1000 required");
  if (!(dt > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("MCConfig: dt and horizon must be > 0");
  if (dt > horizon / 100.0)
    throw std::invalid_argument("MCConfig: dt <= horizon/100 required");
  if (bins < 1) throw std::invalid_argument("MCConfig: bins >= 1 required");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("MCConfig: confidence in (0,1) required");
}

double DensityGrid::z_value() const { return inverse_norm_cdf(0.5 * (1.0 + confidence)); }

double DensityGrid::sigma(std::size_t bin) const { return half_width[bin] / z_value(); }

DensityGrid histogram_from_times(std::span<const double> times, std::size_t bins,
                                 double horizon, double confidence) {
  DensityGrid grid;
  grid.confidence = confidence;
  grid.n_paths = times.size();
  grid.t_edges.resize(bins + 1);
  const double width = horizon / bins;
  for (std::size_t j = 0; j <= bins; ++j) grid.t_edges[j] = j * width;
  std::vector<std::size_t> counts(bins, 0);
  std::size_t crossed = 0;
  for (const double tc : times) {
    if (!std::isfinite(tc)) continue;
    std::size_t j = static_cast<std::size_t>(tc / width);
    if (j >= bins) j = bins - 1;
    ++counts[j];
    ++crossed;
  }
  const double n = static_cast<double>(times.size());
  const double z = inverse_norm_cdf(0.5 * (1.0 + confidence));
  grid.density.resize(bins);
  grid.half_width.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double p = counts[j] / n;
    grid.density[j] = p / width;
    grid.half_width[j] = z * std::sqrt(p * (1.0 - p) / n) / width;
  }
  grid.survival_at_horizon = (n - crossed) / n;
  return grid;
}

DensityGrid fpt_sample(const OUParams& params, const Boundary& f, const MCConfig& cfg) {
  const std::vector<double> times = run_all(params, f, nullptr, cfg);
  return histogram_from_times(times, cfg.bins, cfg.horizon, cfg.confidence);
}

std::vector<double> fpt_sample_times(const OUParams& params, const Boundary& f,
                                     const MCConfig& cfg) {
  return run_all(params, f, nullptr, cfg);
}

DensityGrid fpt_two_sided_sample(const OUParams& params, const Boundary& f_plus,
                                 const Boundary& f_minus, const MCConfig& cfg) {
  const std::vector<double> times = run_all(params, f_plus, &f_minus, cfg);
  return histogram_from_times(times, cfg.bins, cfg.horizon, cfg.confidence);
}

std::vector<double> fpt_two_sided_sample_times(const OUParams& params,
                                               const Boundary& f_plus,
                                               const Boundary& f_minus,
                                               const MCConfig& cfg) {
  return run_all(params, f_plus, &f_minus, cfg);
}

std::vector<TwoSidedExit> fpt_two_sided_sample_exits(const OUParams& params,
                                                     const Boundary& f_plus,
                                                     const Boundary& f_minus,
                                                     const MCConfig& cfg) {
  return run_all_exits(params, f_plus, &f_minus, cfg);
}

double survival_probability(const DensityGrid& grid, double t) {
  const double horizon = grid.t_edges.back();
  if (!(t >= 0.0) || t > horizon)
    throw std::domain_error("survival_probability: t outside [0, horizon]");
  const double width = grid.bin_width();
  double mass = 0.0;
  for (std::size_t j = 0; j < grid.density.size(); ++j) {
    const double lo = grid.t_edges[j], hi = grid.t_edges[j + 1];
    if (t >= hi) {
      mass += grid.density[j] * width;
    } else if (t > lo) {
      mass += grid.density[j] * (t - lo);
      break;
    } else {
      break;
    }
  }
  return 1.0 - mass;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size() && std::isfinite(sa[i]) && std::isfinite(sb[j])) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_value(double level, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-std::log(level / 2.0) / 2.0);
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace oufpt
