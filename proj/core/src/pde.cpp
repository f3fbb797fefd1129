#include "oufpt/pde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oufpt/grid_io.hpp"
#include "oufpt/scales.hpp"

namespace oufpt {

double fp_residual(const Field2D& h, double k, double x, double t, double hx, double ht) {
  if (t - 2.0 * ht <= 0.0)
    throw std::domain_error("fp_residual: t margin violated");
  const double h0 = h(x, t);
  const double dt = (h(x, t + ht) - h(x, t - ht)) / (2.0 * ht);
  const double dx = (h(x + hx, t) - h(x - hx, t)) / (2.0 * hx);
  const double dxx = (h(x + hx, t) - 2.0 * h0 + h(x - hx, t)) / (hx * hx);
  return dt - 0.5 * dxx - k * x * dx - k * h0;
}

Field2D symmetry_image(const Field2D& h, double k, int index, double eps) {
  Field2D out = h;
  switch (index) {
    case 1:
      out.eval = [h, k, eps](double x, double t) {
        return h(x - eps * std::exp(-k * t), t);
      };
      return out;
    case 2:
      out.eval = [h, eps](double x, double t) { return h(x, t - eps); };
      out.t_lo = h.t_lo + eps;
      out.t_hi = h.t_hi + eps;
      return out;
    case 3:
      out.eval = [h, eps](double x, double t) { return std::exp(eps) * h(x, t); };
      return out;
    case 4:
      out.eval = [h, k, eps](double x, double t) {
        const double ekt = std::exp(k * t);
        return std::exp(-2.0 * k * x * eps * ekt + k * eps * eps * ekt * ekt) *
               h(x - eps * ekt, t);
      };
      return out;
    case 5:
      // e^{2kt} - 2k eps = 1 + 2k (r(t) - eps): time argument s(r(t) - eps)
      out.eval = [h, k, eps](double x, double t) {
        const double arg = r_time(k, t) - eps;
        if (2.0 * k * arg <= -1.0)
          throw std::domain_error("symmetry_image(5): e^{2kt} - 2k eps <= 0");
        const double denom = std::sqrt(1.0 + 2.0 * k * arg);
        return std::exp(k * t) / denom *
               h(x * std::exp(k * t) / denom, s_time(k, arg));
      };
      return out;
    case 6:
      // e^{-2kt} + 2k eps = 1 + 2k (eps - w(t)), w(t) = -r(-t); time -s(eps - w)
      out.eval = [h, k, eps](double x, double t) {
        const double wt = step_variance(k, t);  // (1 - e^{-2kt})/2k
        const double arg = eps - wt;
        if (2.0 * k * arg <= -1.0)
          throw std::domain_error("symmetry_image(6): e^{-2kt} + 2k eps <= 0");
        const double den2 = 1.0 + 2.0 * k * arg;  // e^{-2kt} + 2k eps
        return std::exp(-2.0 * k * k * x * x * eps / den2) *
               h(x * std::exp(-k * t) / std::sqrt(den2), -s_time(k, arg));
      };
      return out;
    default:
      throw std::invalid_argument("symmetry_image: index must be 1..6");
  }
}

Field2D h_alpha_beta(const Field2D& h, double k, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("h_alpha_beta: alpha > 0 required");
  Field2D out = h;
  out.eval = [h, k, alpha, beta](double x, double t) {
    const double r = r_time(k, t);
    const double den = 1.0 + alpha * beta * r;
    if (den <= 0.0) throw std::domain_error("h_alpha_beta: past zeta horizon");
    const double u = alpha * alpha * r / den;
    if (2.0 * k * u <= -1.0) throw std::domain_error("h_alpha_beta: mapped time");
    const double su = s_time(k, u);
    const double ekt = std::exp(k * t);
    const double pre = alpha * ekt / std::sqrt(den) *
                       std::exp(-alpha * beta * ekt * ekt * x * x / (2.0 * den) - k * su);
    return pre * h(alpha * std::exp(-k * su + k * t) * x / den, su);
  };
  return out;
}

SymmetryCompositionReport symmetry_composition_check(const Field2D& h, double k, double alpha, double beta,
                            const std::vector<double>& xs, const std::vector<double>& ts,
                            double tol) {
  SymmetryCompositionReport rep;
  if (k == 0.0 || 2.0 * k * alpha - beta == 0.0 || !(alpha > 0.0)) {
    rep.in_domain = false;
    return rep;
  }
  const double e1 = -std::log(alpha) / k;
  const double e2 = (alpha * alpha - 1.0) / (2.0 * k);
  const double e3 = beta / (2.0 * k * (2.0 * k * alpha - beta));
  const double e4 = std::log((2.0 * k * alpha - beta) / (2.0 * k * alpha)) / k;
  const double e5 = e3;
  if (!std::isfinite(e4)) {  // beta > 2 k alpha: log of a negative number
    rep.in_domain = false;
    return rep;
  }
  // (h2 o h5) o (h6 o h2 o h5), rightmost applied first, then the h3-type
  // normalization sqrt((2 k alpha - beta)/(2 k alpha)).
  Field2D comp = symmetry_image(h, k, 5, e5);
  comp = symmetry_image(comp, k, 2, e4);
  comp = symmetry_image(comp, k, 6, e3);
  comp = symmetry_image(comp, k, 5, e2);
  comp = symmetry_image(comp, k, 2, e1);
  comp = symmetry_image(comp, k, 3,
                        0.5 * std::log((2.0 * k * alpha - beta) / (2.0 * k * alpha)));
  const Field2D target = h_alpha_beta(h, k, alpha, beta);
  for (const double x : xs)
    for (const double t : ts)
      rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(comp(x, t) - target(x, t)));
  rep.pass = rep.max_abs_diff < tol;
  return rep;
}

std::string residual_report_csv(const Field2D& h, double k,
                                const std::vector<double>& xs,
                                const std::vector<double>& ts, double hx, double ht) {
  std::ostringstream os;
  os << "x,t,residual\n";
  for (const double x : xs)
    for (const double t : ts)
      os << format_double(x) << ',' << format_double(t) << ','
         << format_double(fp_residual(h, k, x, t, hx, ht)) << "\n";
  return os.str();
}

Field2D transition_field(double k, double x0) {
  Field2D f;
  f.eval = [k, x0](double x, double t) { return transition_density(k, x0, x, t); };
  f.x_lo = -20.0;
  f.x_hi = 20.0;
  f.t_lo = 1e-6;
  f.t_hi = 50.0;
  return f;
}

}  // namespace oufpt
