#include "oufpt/images.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "oufpt/quadrature.hpp"
#include "oufpt/roots.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGaussCut = 9.0;  // e^{-81/2} ~ 2.6e-18 of the peak

double logsumexp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// int_{lo}^{hi} g(theta) e^{theta y - theta^2 s/2} dtheta via theta = y/s + v/sqrt(s):
//   e^{y^2/(2s)} / sqrt(s) * int g(y/s + v/sqrt s) e^{-v^2/2} dv.
// Returns the log of the integral of weight(theta)*g; weight extracts theta
// moments (1 or theta).
double log_cont_integral(const ImageMeasure& m, double y, double s,
                         const std::function<double(double)>& weight, bool& negative) {
  negative = false;
  if (!m.has_continuous()) return -kInf;
  if (!(s > 0.0)) throw std::domain_error("l_function: s must be > 0");
  const double center = y / s, scale = 1.0 / std::sqrt(s);
  double vlo = -kGaussCut, vhi = kGaussCut;
  if (std::isfinite(m.cont_lo)) vlo = std::max(vlo, (m.cont_lo - center) / scale);
  if (std::isfinite(m.cont_hi)) vhi = std::min(vhi, (m.cont_hi - center) / scale);
  if (vlo >= vhi) return -kInf;
  const auto res = integrate(
      [&](double v) {
        const double theta = center + scale * v;
        return m.cont_density(theta) * weight(theta) * std::exp(-0.5 * v * v);
      },
      vlo, vhi, 1e-14, 1e-12);
  if (!res.converged) throw std::runtime_error("l_function: quadrature diverged");
  double val = res.value;
  if (val < 0.0) {
    negative = true;
    val = -val;
  }
  if (val == 0.0) return -kInf;
  return y * y / (2.0 * s) - 0.5 * std::log(s) + std::log(val);
}
}  // namespace

bool ImageMeasure::two_sided() const {
  for (const auto& atom : atoms)
    if (atom.theta < 0.0) return true;
  return has_continuous() && cont_lo < 0.0;
}

ImageMeasure ImageMeasure::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ImageMeasure m;
  if (j.contains("atoms")) {
    for (const auto& atom : j.at("atoms"))
      m.atoms.push_back({atom.at("theta").get<double>(), atom.at("weight").get<double>()});
  }
  if (j.contains("cont")) {
    const auto& c = j.at("cont");
    const std::string kind = c.at("kind").get<std::string>();
    if (kind != "lebesgue-scaled")
      throw std::invalid_argument("ImageMeasure: unknown cont kind '" + kind + "'");
    const double coeff = c.at("coeff").get<double>();
    m.cont_density = [coeff](double) { return coeff; };
    m.cont_lo = c.contains("lo") ? c.at("lo").get<double>() : -kInf;
    m.cont_hi = c.contains("hi") ? c.at("hi").get<double>() : kInf;
  }
  m.a = j.at("a").get<double>();
  if (!(m.a > 0.0)) throw std::invalid_argument("ImageMeasure: a must be > 0");
  for (const auto& atom : m.atoms)
    if (!(atom.weight > 0.0))
      throw std::invalid_argument("ImageMeasure: atom weights must be > 0");
  return m;
}

std::string ImageMeasure::to_json() const {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& atom : atoms) arr.push_back({{"theta", atom.theta}, {"weight", atom.weight}});
  j["atoms"] = arr;
  if (has_continuous()) {
    nlohmann::ordered_json c;
    c["kind"] = "lebesgue-scaled";
    c["coeff"] = cont_density(0.5 * (std::isfinite(cont_lo) ? cont_lo : 0.0) +
                              0.5 * (std::isfinite(cont_hi) ? cont_hi : 0.0));
    if (std::isfinite(cont_lo)) c["lo"] = cont_lo;
    if (std::isfinite(cont_hi)) c["hi"] = cont_hi;
    j["cont"] = c;
  }
  j["a"] = a;
  return j.dump(2) + "\n";
}

AdmissibilityReport check_admissibility(const ImageMeasure& m) {
  AdmissibilityReport rep;
  rep.eps = {1e-3, 1.0, 1e3};
  for (const double eps : rep.eps) {
    double v = 0.0;
    for (const auto& atom : m.atoms)
      if (atom.theta > 0.0) v += atom.weight * std::exp(-0.5 * eps * atom.theta);
    if (m.has_continuous() && m.cont_hi > 0.0) {
      const double lo = std::max(0.0, m.cont_lo);
      // exponential tail: truncate where e^{-eps theta/2} < 1e-18
      const double hi = std::min(m.cont_hi, lo + 2.0 / eps * 41.5);
      const auto res = integrate(
          [&](double th) { return m.cont_density(th) * std::exp(-0.5 * eps * th); }, lo,
          hi, 1e-14, 1e-10);
      if (!res.converged) rep.ok = false;
      v += res.value;
    }
    if (!std::isfinite(v)) rep.ok = false;
    rep.value.push_back(v);
  }
  return rep;
}

double log_l_function(const ImageMeasure& m, double y, double s) {
  if (!(s > 0.0)) throw std::domain_error("l_function: s must be > 0");
  std::vector<double> logs;
  for (const auto& atom : m.atoms)
    logs.push_back(std::log(atom.weight) + atom.theta * y -
                   0.5 * atom.theta * atom.theta * s);
  bool neg = false;
  const double lc =
      log_cont_integral(m, y, s, [](double) { return 1.0; }, neg);
  if (neg) throw std::runtime_error("l_function: negative continuous density");
  if (std::isfinite(lc)) logs.push_back(lc);
  if (logs.empty()) throw std::invalid_argument("l_function: empty measure");
  return logsumexp(logs);
}

double l_function(const ImageMeasure& m, double y, double s) {
  return std::exp(log_l_function(m, y, s));
}

double image_kernel(const ImageMeasure& m, double k, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("image_kernel: t must be > 0");
  double img = 0.0;
  for (const auto& atom : m.atoms)
    img += atom.weight * transition_density(k, atom.theta, x, t);
  if (m.has_continuous()) {
    const double rt = r_time(k, t);
    const double center = x * std::exp(k * t), sd = std::sqrt(rt);
    const double lo = std::max(m.cont_lo, center - kGaussCut * sd);
    const double hi = std::min(m.cont_hi, center + kGaussCut * sd);
    if (lo < hi)
      img += integrate_or_throw(
          [&](double th) { return m.cont_density(th) * transition_density(k, th, x, t); },
          lo, hi, 1e-14, 1e-11);
  }
  return transition_density(k, 0.0, x, t) - img / m.a;
}

namespace {

// Solves log_l(y, 1/r) = log a in y on the given side of the minimizer.
double solve_y(const ImageMeasure& m, double s, double log_a, double y_min, bool upper) {
  const double dir = upper ? 1.0 : -1.0;
  double step = std::max(1.0, std::abs(y_min)) * 0.5;
  double lo = y_min, hi = y_min + dir * step;
  int guard = 0;
  while (log_l_function(m, hi, s) < log_a) {
    lo = hi;
    step *= 2.0;
    hi += dir * step;
    if (++guard > 200) throw std::runtime_error("images: root bracket not found");
  }
  auto fn = [&](double y) { return log_l_function(m, y, s) - log_a; };
  return upper ? find_root(fn, lo, hi, 1e-15, 4e-16) : find_root(fn, hi, lo, 1e-15, 4e-16);
}

// Minimizer of l(., s); l is strictly convex in y.
double l_minimizer(const ImageMeasure& m, double s) {
  // derivative d/dy log l = E_F-tilted[theta] is increasing; root by expansion
  auto dlog = [&](double y) {
    const double h = 1e-5 * std::max(1.0, std::abs(y));
    return (log_l_function(m, y + h, s) - log_l_function(m, y - h, s)) / (2.0 * h);
  };
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (dlog(lo) > 0.0) {
    lo *= 2.0;
    if (++guard > 100) throw std::runtime_error("images: minimizer bracket");
  }
  while (dlog(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 100) throw std::runtime_error("images: minimizer bracket");
  }
  return find_root(dlog, lo, hi, 1e-13, 1e-13);
}

double solve_boundary_x(const ImageMeasure& m, double k, double t, bool upper) {
  const double rt = r_time(k, t);
  const double s = 1.0 / rt;
  const double log_a = std::log(m.a);
  const double y_min = m.two_sided() ? l_minimizer(m, s) : -kInf;
  double y;
  if (m.two_sided()) {
    if (log_l_function(m, y_min, s) >= log_a)
      throw std::domain_error("images: t beyond t_a (no root)");
    y = solve_y(m, s, log_a, y_min, upper);
  } else {
    // one-sided: l increases from 0 to +inf in y
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (log_l_function(m, lo, s) > log_a) {
      lo -= std::max(1.0, -lo);
      if (++guard > 200) throw std::runtime_error("images: bracket (low)");
    }
    while (log_l_function(m, hi, s) < log_a) {
      hi *= 2.0;
      if (++guard > 200) throw std::runtime_error("images: bracket (high)");
    }
    y = find_root([&](double yy) { return log_l_function(m, yy, s) - log_a; }, lo, hi,
                  1e-15, 4e-16);
  }
  return y * rt * std::exp(-k * t);
}

}  // namespace

double images_domain_end(const ImageMeasure& m, double k) {
  if (!m.two_sided()) return kInf;
  // l(y_min(r), 1/r) is increasing in r; find the r where it reaches a.
  auto val = [&](double r) {
    return log_l_function(m, l_minimizer(m, 1.0 / r), 1.0 / r) - std::log(m.a);
  };
  const double r_max = k < 0.0 ? rate_horizon(k) * (1.0 - 1e-12) : 1e12;
  if (val(r_max) < 0.0) return kInf;
  double lo = std::min(1e-8, r_max * 0.5);
  int guard = 0;
  while (val(lo) > 0.0) {
    lo *= 0.25;
    if (++guard > 60) throw std::runtime_error("images_domain_end: lower bracket");
  }
  const double r_star = find_root(val, lo, r_max, 1e-14, 1e-14);
  return s_time(k, r_star);
}

Boundary boundary_from_measure(const ImageMeasure& m, double k) {
  if (m.two_sided())
    throw std::invalid_argument("boundary_from_measure: measure is two-sided");
  for (const auto& atom : m.atoms)
    if (!(atom.theta > 0.0))
      throw std::invalid_argument("boundary_from_measure: atoms must sit in (0, inf)");
  // f(0+) = (inf supp theta)/2; extend continuously at t = 0
  double theta_inf = kInf;
  for (const auto& atom : m.atoms) theta_inf = std::min(theta_inf, atom.theta);
  if (m.has_continuous()) theta_inf = std::min(theta_inf, std::max(0.0, m.cont_lo));
  const double f0 = 0.5 * theta_inf;
  const double de = k > 0.0 ? 340.0 / k : kInf;
  return Boundary::from_function(
      [m, k, f0](double t) { return t <= 0.0 ? f0 : solve_boundary_x(m, k, t, true); },
      de, nullptr, 1);
}

std::pair<Boundary, Boundary> boundary_from_measure_two_sided(const ImageMeasure& m,
                                                              double k) {
  if (!m.two_sided())
    throw std::invalid_argument("boundary_from_measure_two_sided: measure is one-sided");
  const double t_a = images_domain_end(m, k);
  auto fp = Boundary::from_function(
      [m, k](double t) { return t <= 0.0 ? 0.0 : solve_boundary_x(m, k, t, true); }, t_a,
      nullptr, 1);
  auto fm = Boundary::from_function(
      [m, k](double t) { return t <= 0.0 ? 0.0 : solve_boundary_x(m, k, t, false); }, t_a,
      nullptr, -1);
  return {fp, fm};
}

namespace {

// boundary flux -(1/2) dh_k/dx at x, evaluated in the W scale at y = x e^{kt}.
double boundary_flux(const ImageMeasure& m, double k, double y, double t) {
  const double rt = r_time(k, t);
  const double sd = std::sqrt(rt);
  double num = 0.0, den = 0.0;
  for (const auto& atom : m.atoms) {
    const double w = atom.weight * norm_pdf((y - atom.theta) / sd);
    num += atom.theta * w;
    den += w;
  }
  if (m.has_continuous()) {
    const double lo = std::max(m.cont_lo, y - kGaussCut * sd);
    const double hi = std::min(m.cont_hi, y + kGaussCut * sd);
    if (lo < hi) {
      num += integrate_or_throw(
          [&](double th) { return th * m.cont_density(th) * norm_pdf((y - th) / sd); },
          lo, hi, 1e-16, 1e-11);
      den += integrate_or_throw(
          [&](double th) { return m.cont_density(th) * norm_pdf((y - th) / sd); }, lo,
          hi, 1e-16, 1e-11);
    }
  }
  if (den <= 0.0) return 0.0;
  return std::exp(2.0 * k * t) / (2.0 * rt * sd) * norm_pdf(y / sd) * (num / den);
}

}  // namespace

double images_density(const ImageMeasure& m, double k, const Boundary& f, double t) {
  if (!(t > 0.0)) throw std::domain_error("images_density: t must be > 0");
  const double y = f(t) * std::exp(k * t);
  if (!m.two_sided()) return boundary_flux(m, k, y, t);
  // two-sided exit: total density is the flux through both boundaries; for a
  // symmetric measure the mirror boundary sits at -f(t) and carries the same
  // magnitude, so the one-boundary expression doubles
  return std::abs(boundary_flux(m, k, y, t)) + std::abs(boundary_flux(m, k, -y, t));
}

ImageMeasure transformed_measure(const ImageMeasure& m, double alpha, double beta) {
  if (alpha == 0.0) throw std::invalid_argument("transformed_measure: alpha nonzero");
  ImageMeasure out = m;
  const double c = beta / alpha;
  for (auto& atom : out.atoms)
    atom.weight = atom.weight * std::exp(-0.5 * c * atom.theta * atom.theta);
  if (m.has_continuous()) {
    auto base = m.cont_density;
    out.cont_density = [base, c](double th) {
      return base(th) * std::exp(-0.5 * c * th * th);
    };
  }
  return out;
}

ImageMeasure scaled_measure(const ImageMeasure& m, double c) {
  if (c == 0.0) throw std::invalid_argument("scaled_measure: c nonzero");
  ImageMeasure out = m;
  for (auto& atom : out.atoms) atom.theta *= c;
  if (m.has_continuous()) {
    auto base = m.cont_density;
    const double inv = 1.0 / c;
    out.cont_density = [base, inv](double th) {
      return base(th * inv) * std::abs(inv);
    };
    out.cont_lo = c > 0.0 ? m.cont_lo * c : m.cont_hi * c;
    out.cont_hi = c > 0.0 ? m.cont_hi * c : m.cont_lo * c;
  }
  return out;
}

ShapeCheckReport boundary_shape_check(const Boundary& f, double k,
                               const std::vector<double>& probes, double tol_scale) {
  ShapeCheckReport rep;
  for (const double t : probes) {
    const double fv = f(t);
    const double scale = std::max(1.0, std::abs(fv));
    // (2) d/dt [ f e^{kt} / r(t) ] <= 0
    double h = 1e-5 * std::max(1.0, t);
    h = std::min(h, 0.45 * std::min(t, f.domain_end() - t));
    auto g = [&](double u) { return f(u) * std::exp(k * u) / r_time(k, u); };
    const double slope = (g(t + h) - g(t - h)) / (2.0 * h);
    if (slope > tol_scale * scale) {
      rep.monotone_ok = false;
      ++rep.violations;
    }
    rep.worst_monotone = std::max(rep.worst_monotone, slope);
    // (3) f'' - k^2 f <= 0
    const double conc = f.second_deriv(t) - k * k * fv;
    if (conc > tol_scale * scale) {
      rep.concavity_ok = false;
      ++rep.violations;
    }
    rep.worst_concavity = std::max(rep.worst_concavity, conc);
  }
  return rep;
}

}  // namespace oufpt
