#include "oufpt/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oufpt/grid_io.hpp"
#include "oufpt/quadrature.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double psi(double x) { return x * std::exp(-0.5 * x * x); }  // KEP integrand factor
}  // namespace

std::optional<double> gamma_ab(const TransformParams& p) {
  if (p.alpha == 0.0) throw std::invalid_argument("gamma_ab: alpha nonzero");
  if (p.beta > 0.0 && p.k >= 0.0) return p.alpha / p.beta;
  if (p.k < 0.0 && p.beta > 2.0 * p.k / p.alpha - 2.0 * p.k * p.alpha)
    return p.alpha * p.alpha / (p.alpha * p.beta - 2.0 * p.k);
  return std::nullopt;
}

double asymptotic_g(const Boundary& f, const TransformParams& p, double t) {
  const Boundary sf = s_transform(f, p);
  return std::exp(p.k * t) * sf(t) / r_time(p.k, t);
}

std::string TransienceReport::to_json() const {
  std::ostringstream os;
  os << "{\"verdict\": \""
     << (verdict == Verdict::transient ? "transient" : "not-classified") << "\", ";
  os << "\"case\": \"";
  switch (classified_by) {
    case Case::horizon_finite: os << "horizon-finite"; break;
    case Case::limit_positive_finite: os << "limit-positive-finite"; break;
    case Case::test_inconclusive: os << "test-inconclusive"; break;
  }
  os << "\", \"gamma\": " << (gamma ? format_double(*gamma) : "null");
  os << ", \"limit_value\": " << format_double(limit_value);
  os << ", \"integral_value\": " << format_double(integral_value);
  os << ", \"tail_bound\": " << (tail_bound ? format_double(*tail_bound) : "null");
  os << ", \"kep_convergent\": " << (kep_convergent ? "true" : "false");
  os << ", \"kep_divergent\": " << (kep_divergent ? "true" : "false");
  os << ", \"monotonicity_verified\": " << (monotonicity_verified ? "true" : "false")
     << "}\n";
  return os.str();
}

TransienceReport transience_test(const Boundary& f, const TransformParams& p) {
  if (!(p.alpha > 0.0))
    throw std::invalid_argument("transience_test: alpha > 0 required");
  TransienceReport rep;
  rep.gamma = gamma_ab(p);

  const double zeta = zeta_horizon(p);
  if (std::isfinite(zeta)) {
    rep.verdict = TransienceReport::Verdict::transient;
    rep.classified_by = TransienceReport::Case::horizon_finite;
    return rep;
  }

  if (rep.gamma) {
    const double G = *rep.gamma;
    const double ind = p.k < 0.0 ? 1.0 : 0.0;
    const double sG = s_time(p.k, G);
    if (sG < f.domain_end()) {
      rep.limit_value = (p.beta - 2.0 * p.k / p.alpha * ind) *
                        std::sqrt(2.0 * p.k * G + 1.0) * f(sG);
      if (rep.limit_value > 0.0 && std::isfinite(rep.limit_value)) {
        rep.verdict = TransienceReport::Verdict::transient;
        rep.classified_by = TransienceReport::Case::limit_positive_finite;
        // fall through: still evaluate the KEP integral for the report
      }
    }
  }

  // KEP test on Lambda_k (S^{alpha,beta}_k f)
  const Boundary lam_sf = lambda_k(s_transform(f, p), p.k);
  auto gt = [&](double u) { return std::abs(lam_sf(u)) / std::sqrt(u); };

  const double t_max = std::min(1e6, 0.45 * lam_sf.domain_end());
  if (t_max <= 2.0) return rep;  // nothing sensible to integrate

  // eventual monotonicity of u^{-1/2} Lambda(Sf)(u), the integral test's hypothesis;
  // probed on the upper half of the log range so an early dip is allowed
  rep.monotonicity_verified = true;
  {
    double prev = gt(std::sqrt(t_max));
    for (int i = 1; i <= 20; ++i) {
      const double u = std::pow(t_max, 0.5 + 0.5 * i / 20.0);
      const double cur = gt(u);
      if (cur < prev * (1.0 - 1e-9)) {
        rep.monotonicity_verified = false;
        break;
      }
      prev = cur;
    }
  }

  // quadrature in dyadic segments (a single huge panel aliases to zero)
  {
    double total = 0.0, lo = 1.0;
    while (lo < t_max) {
      const double hi = std::min(2.0 * lo, t_max);
      total += integrate([&](double u) { return psi(gt(u)) / u; }, lo, hi, 1e-12, 1e-10)
                   .value;
      lo = hi;
    }
    rep.integral_value = total;
  }

  // dyadic tail blocks [2^j t_max, 2^{j+1} t_max]; psi is unimodal with peak
  // at 1, so block bounds follow from the g values sampled across the block
  // (exact bounds under the verified monotonicity, estimates otherwise).
  double tail_upper = 0.0;
  bool convergent = false, divergent = false;
  double gl = gt(t_max);
  int stall = 0;
  for (int j = 0; j < 60; ++j) {
    const double left = t_max * std::pow(2.0, j);
    const double right = 2.0 * left;
    double gr, gm;
    try {
      gr = gt(right);
      gm = gt(std::sqrt(left * right));
    } catch (const std::exception&) {
      break;  // boundary domain exhausted; refuse classification
    }
    const double g_lo = std::min({gl, gm, gr});
    const double g_hi = std::max({gl, gm, gr});
    const double block_sup =
        (g_lo >= 1.0) ? psi(g_lo) : (g_hi <= 1.0 ? psi(g_hi) : psi(1.0));
    const double block_inf = std::min(psi(g_lo), psi(g_hi));
    const double upper = std::log(2.0) * block_sup;
    const double lower = std::log(2.0) * block_inf;
    tail_upper += upper;
    if (upper < 1e-14 * std::max(1e-300, rep.integral_value + tail_upper)) {
      convergent = true;
      break;
    }
    if (lower > 1e-6 && g_hi < 1e6) {
      if (++stall >= 20) {  // non-decaying blocks: integral grows without bound
        divergent = true;
        break;
      }
    } else {
      stall = 0;
    }
    gl = gr;
  }
  rep.kep_divergent = divergent;
  // convergence certification leans on the integral test's monotone hypothesis
  rep.kep_convergent = convergent && rep.monotonicity_verified;
  if (rep.kep_convergent) {
    rep.tail_bound = tail_upper;
    if (rep.verdict == TransienceReport::Verdict::not_classified) {
      rep.verdict = TransienceReport::Verdict::transient;
      rep.classified_by = TransienceReport::Case::test_inconclusive;
    }
  }
  return rep;
}

std::optional<double> asymptotic_density(const DensityFn& p_f, const Boundary& f,
                                         const TransformParams& p, double t) {
  const auto G = gamma_ab(p);
  if (!G) throw std::invalid_argument("asymptotic_density: Gamma_{alpha,beta} undefined");
  const auto pf_val = p_f(s_time(p.k, *G));
  if (!pf_val) return std::nullopt;
  const Boundary sf = s_transform(f, p);
  const double r = r_time(p.k, t);
  const double ab = p.alpha * p.beta;
  const double den = ab * r + 1.0;
  if (den <= 0.0) return std::nullopt;
  const double sft = sf(t);
  const double expo = -ab / (2.0 * den) * sft * sft * std::exp(2.0 * p.k * t);
  return std::exp(2.0 * p.k * t + expo) * p.alpha * p.alpha / std::sqrt(den) /
         (2.0 * p.k * p.alpha * p.alpha * r + ab * r + 1.0) * *pf_val;
}

AndersonPittResult anderson_pitt_density(const Boundary& f, const TransformParams& p,
                                         double a_rv, double t) {
  if (!(a_rv >= 0.5 && a_rv < 1.0))
    throw std::invalid_argument("anderson_pitt_density: index in [1/2, 1)");
  if (!std::isfinite(zeta_horizon(p)))
    throw std::invalid_argument("anderson_pitt_density: requires zeta < inf");
  AndersonPittResult out;

  // condition (iii) probed on a log range (stops where f's domain ends)
  double slope_sup = -kInf, curv_sup = 0.0;
  for (int i = 0; i <= 30; ++i) {
    const double tau = std::pow(10.0, -1.0 + 4.0 * i / 30.0);
    double s;
    try {
      s = s_time(p.k, tau);
    } catch (const std::exception&) {
      break;
    }
    if (s >= f.domain_end()) break;
    const double fv = f(s);
    if (fv == 0.0) continue;
    const double num = tau * f.deriv(s) + p.k * tau * fv;
    slope_sup = std::max(slope_sup, num / ((2.0 * p.k * tau + 1.0) * fv));
    const double den = 2.0 * p.k * tau + 1.0;
    curv_sup = std::max(curv_sup, std::abs(tau * tau / (den * den) *
                                           (f.second_deriv(s) - p.k * p.k * fv)) /
                                      std::abs(fv));
  }
  out.slope_sup = slope_sup;
  out.curvature_sup = curv_sup;
  out.slope_condition_ok = slope_sup < 1.0;
  out.curvature_condition_ok = std::isfinite(curv_sup);

  const double r = r_time(p.k, t);
  const double den = 1.0 + p.alpha * p.beta * r;
  if (den <= 0.0) throw std::domain_error("anderson_pitt_density: t past zeta");
  const double u = p.alpha * p.alpha * r / den;
  const double su = s_time(p.k, u);
  const double ftil = ((p.k * u + 1.0) * f(su) - u * f.deriv(su)) /
                      std::sqrt(2.0 * p.k * u + 1.0);
  const double ab = std::abs(p.alpha * p.beta);
  out.value = std::sqrt(ab * ab * ab / (2.0 * 3.14159265358979323846)) *
              (2.0 * p.k / ab + 1.0) * (1.0 - a_rv) * ftil;
  return out;
}

}  // namespace oufpt
