#include "oufpt/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oufpt {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol_abs, double xtol_rel, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::runtime_error("find_root: no sign change in bracket");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * xtol_rel * std::abs(b) + 0.5 * xtol_abs;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc, rr = fb / fc;
        p = s * (2.0 * m * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa;
      d = e = b - a;
    }
  }
  throw std::runtime_error("find_root: max iterations exceeded");
}

double inverse_monotone(const std::function<double(double)>& g, double y, double lo,
                        double hi0, double limit) {
  const bool increasing = g(std::min(hi0, limit)) >= g(lo);
  auto h = [&](double t) { return increasing ? g(t) - y : y - g(t); };
  double hi = std::min(hi0, limit);
  double hlo = h(lo);
  if (hlo > 0.0) {
    // root below lo; expand downward toward 0 for the common t>=0 usage
    double lo2 = lo;
    while (lo2 > 0.0 && h(lo2) > 0.0) lo2 *= 0.5;
    if (h(lo2) > 0.0) throw std::runtime_error("inverse_monotone: bracket not found (low)");
    return find_root(h, lo2, lo);
  }
  while (h(hi) < 0.0) {
    if (hi >= limit) throw std::runtime_error("inverse_monotone: bracket not found");
    hi = std::min(hi * 2.0, limit);
  }
  return find_root(h, lo, hi);
}

}  // namespace oufpt
