#include "oufpt/density.hpp"

#include <cmath>
#include <stdexcept>

namespace oufpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DensityFn DensityFn::closed_form(std::function<double(double)> eval, double support_end) {
  DensityFn d;
  d.source_ = Source::closed_form;
  d.support_end_ = support_end;
  d.eval_ = [fn = std::move(eval), support_end](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= support_end) return std::nullopt;
    return fn(t);
  };
  d.half_width_ = [support_end](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= support_end) return std::nullopt;
    return 0.0;
  };
  return d;
}

DensityFn DensityFn::from_grid(const DensityGrid& grid) {
  DensityFn d;
  d.source_ = Source::mc_grid;
  d.support_end_ = grid.t_edges.back();
  d.confidence_ = grid.confidence;
  const double width = grid.bin_width();
  const std::size_t bins = grid.density.size();
  auto bin_of = [width, bins](double t) {
    std::size_t j = static_cast<std::size_t>(t / width);
    return j >= bins ? bins - 1 : j;
  };
  d.eval_ = [grid, bin_of, end = d.support_end_](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= end) return std::nullopt;
    return grid.density[bin_of(t)];
  };
  d.half_width_ = [grid, bin_of, end = d.support_end_](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= end) return std::nullopt;
    return grid.half_width[bin_of(t)];
  };
  return d;
}

DensityFn DensityFn::make(Source src, double support_end,
                          std::function<std::optional<double>(double)> eval,
                          std::function<std::optional<double>(double)> hw,
                          double confidence) {
  DensityFn d;
  d.source_ = src;
  d.support_end_ = support_end;
  d.eval_ = std::move(eval);
  d.half_width_ = std::move(hw);
  d.confidence_ = confidence;
  return d;
}

std::optional<double> DensityFn::operator()(double t) const { return eval_(t); }
std::optional<double> DensityFn::half_width(double t) const { return half_width_(t); }

DensityFn transform_density(const DensityFn& p_f, const Boundary& f,
                            const TransformParams& p) {
  if (p.alpha == 0.0) throw std::invalid_argument("transform_density: alpha nonzero");
  const Boundary sf = s_transform(f, p);
  const double zeta = zeta_horizon(p);
  const double alpha = p.alpha, beta = p.beta, k = p.k;

  // support ends where the mapped time s(u) leaves the source support
  double support = std::min(zeta, sf.domain_end());
  {
    const double src_end = p_f.support_end();
    if (std::isfinite(src_end)) {
      const double R = r_time(k, src_end);
      const double den = alpha * alpha - R * alpha * beta;
      if (den > 0.0) {
        const double r_star = R / den;
        if (k >= 0.0 || r_star < rate_horizon(k))
          support = std::min(support, s_time(k, r_star));
      }
    }
  }

  auto prefactor = [alpha, beta, k, sf](double t) -> std::optional<double> {
    const double r = r_time(k, t);
    const double den = 1.0 + alpha * beta * r;
    if (den <= 0.0) return std::nullopt;
    const double u = alpha * alpha * r / den;
    const double two_ku = 2.0 * k * u + 1.0;
    if (two_ku <= 0.0) return std::nullopt;
    const double sft = sf(t);
    const double expo = -alpha * beta / (2.0 * den) * sft * sft * std::exp(2.0 * k * t);
    return std::exp(2.0 * k * t + expo) * alpha * alpha * std::pow(den, -1.5) / two_ku;
  };
  auto mapped_time = [alpha, beta, k](double t) {
    const double r = r_time(k, t);
    return s_time(k, alpha * alpha * r / (1.0 + alpha * beta * r));
  };

  auto eval = [p_f, prefactor, mapped_time, zeta](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= zeta) return std::nullopt;
    const auto pre = prefactor(t);
    if (!pre) return std::nullopt;
    const auto src = p_f(mapped_time(t));
    if (!src) return std::nullopt;
    return *pre * *src;
  };
  auto hw = [p_f, prefactor, mapped_time, zeta](double t) -> std::optional<double> {
    if (!(t > 0.0) || t >= zeta) return std::nullopt;
    const auto pre = prefactor(t);
    if (!pre) return std::nullopt;
    const auto src = p_f.half_width(mapped_time(t));
    if (!src) return std::nullopt;
    return *pre * *src;
  };
  return DensityFn::make(DensityFn::Source::transformed, support, std::move(eval),
                         std::move(hw), p_f.confidence());
}

DensityFn bm_transform_density(const DensityFn& p_f, const Boundary& f, double alpha,
                               double beta) {
  return transform_density(p_f, f, {alpha, beta, 0.0});
}

DensityFn timechange_density(const DensityFn& p_bm, double k) {
  double support = kInf;
  if (std::isfinite(p_bm.support_end())) {
    const double end = p_bm.support_end();
    support = (k < 0.0 && end >= rate_horizon(k)) ? kInf : s_time(k, end);
  } else if (k < 0.0) {
    support = kInf;
  }
  auto eval = [p_bm, k](double t) -> std::optional<double> {
    if (!(t > 0.0)) return std::nullopt;
    const auto v = p_bm(r_time(k, t));
    if (!v) return std::nullopt;
    return std::exp(2.0 * k * t) * *v;
  };
  auto hw = [p_bm, k](double t) -> std::optional<double> {
    if (!(t > 0.0)) return std::nullopt;
    const auto v = p_bm.half_width(r_time(k, t));
    if (!v) return std::nullopt;
    return std::exp(2.0 * k * t) * *v;
  };
  return DensityFn::make(DensityFn::Source::transformed, support, std::move(eval),
                         std::move(hw), p_bm.confidence());
}

DensityFn timechange_density_inverse(const DensityFn& p_ou, double k) {
  double support = kInf;
  if (std::isfinite(p_ou.support_end())) {
    if (2.0 * k * p_ou.support_end() <= 690.0) support = r_time(k, p_ou.support_end());
  } else if (k < 0.0) {
    support = rate_horizon(k);
  }
  auto eval = [p_ou, k](double u) -> std::optional<double> {
    if (!(u > 0.0)) return std::nullopt;
    if (k < 0.0 && u >= rate_horizon(k)) return std::nullopt;
    const double t = s_time(k, u);
    const auto v = p_ou(t);
    if (!v) return std::nullopt;
    return std::exp(-2.0 * k * t) * *v;
  };
  auto hw = [p_ou, k](double u) -> std::optional<double> {
    if (!(u > 0.0)) return std::nullopt;
    if (k < 0.0 && u >= rate_horizon(k)) return std::nullopt;
    const double t = s_time(k, u);
    const auto v = p_ou.half_width(t);
    if (!v) return std::nullopt;
    return std::exp(-2.0 * k * t) * *v;
  };
  return DensityFn::make(DensityFn::Source::transformed, support, std::move(eval),
                         std::move(hw), p_ou.confidence());
}

Boundary drift_reduce(const Boundary& f, double mu, double k) {
  auto eval = [f, mu, k](double t) { return f(t) - mu * (1.0 - std::exp(-k * t)); };
  std::function<double(double)> deriv;
  if (f.has_analytic_deriv()) {
    deriv = [f, mu, k](double t) { return f.deriv(t) - mu * k * std::exp(-k * t); };
  }
  return Boundary::from_function(std::move(eval), f.domain_end(), std::move(deriv),
                                 f.sign());
}

}  // namespace oufpt
