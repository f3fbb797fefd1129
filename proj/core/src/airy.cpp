#include "oufpt/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace oufpt {

namespace {

using LD = long double;

constexpr LD kAi0 = 0.3550280538878172392600631860041831763980L;
constexpr LD kAip0 = -0.2588194037928067984051835601892039634793L;
constexpr LD kSqrtPi = 1.7724538509055160272981674833411451827975L;
constexpr double kPi = 3.14159265358979323846;

struct Pair {
  LD y, yp;
};

// Maclaurin series of y'' = xy: F (y(0)=1, y'(0)=0) and G (y(0)=0, y'(0)=1).
Pair maclaurin(LD x) {
  const LD x3 = x * x * x;
  LD f = 1.0L, fp = 0.0L;       // F and F'
  LD g = x, gp = 1.0L;          // G and G'
  LD tf = 1.0L, tg = x;
  for (int m = 1; m < 80; ++m) {
    tf *= x3 / ((3.0L * m) * (3.0L * m - 1.0L));
    tg *= x3 / ((3.0L * m + 1.0L) * (3.0L * m));
    f += tf;
    g += tg;
    fp += tf * (3.0L * m) / x;        // d/dx x^{3m}
    gp += tg * (3.0L * m + 1.0L) / x; // d/dx x^{3m+1}
    if (std::abs(tf) < 1e-25L * std::abs(f) && std::abs(tg) < 1e-25L * std::abs(g))
      break;
  }
  if (x == 0.0L) {
    fp = 0.0L;
    gp = 1.0L;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Exponential asymptotic expansion for x > 6.
Pair asymptotic_pos(LD x) {
  const LD xi = 2.0L / 3.0L * x * std::sqrt(x);
  LD u = 1.0L, sa = 1.0L, sb = 1.0L;
  LD sign = 1.0L;
  LD prev = 1.0L;
  for (int n = 1; n < 40; ++n) {
    u *= (6.0L * n - 5.0L) * (6.0L * n - 3.0L) * (6.0L * n - 1.0L) /
         (216.0L * n * (2.0L * n - 1.0L));
    const LD term = u / std::pow(xi, static_cast<LD>(n));
    if (term > prev) break;  // divergent tail reached
    prev = term;
    sign = -sign;
    sa += sign * term;
    sb += sign * term * (6.0L * n + 1.0L) / (1.0L - 6.0L * n);
    if (term < 1e-22L) break;
  }
  const LD pre = std::exp(-xi) / (2.0L * kSqrtPi);
  const LD x14 = std::pow(x, 0.25L);
  return {pre / x14 * sa, -pre * x14 * sb};
}

// Taylor-stepped integration of y'' = xy (both directions are stable on the
// oscillatory side).
Pair step_from(Pair state, LD x0, LD x_target) {
  const LD span = x_target - x0;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / 0.25L)));
  const LD h = span / nsteps;
  LD x = x0;
  for (int s = 0; s < nsteps; ++s) {
    LD c[40];
    c[0] = state.y;
    c[1] = state.yp;
    c[2] = 0.5L * x * c[0];
    for (int n = 1; n + 2 < 40; ++n)
      c[n + 2] = (x * c[n] + c[n - 1]) / ((n + 1.0L) * (n + 2.0L));
    LD y = 0.0L, yp = 0.0L;
    for (int n = 39; n >= 1; --n) {
      y = y * h + c[n];
      yp = yp * h + c[n] * n;
    }
    y = y * h + c[0];
    state = {y, yp};
    x += h;
  }
  return state;
}

Pair airy_ld(double x) {
  if (std::abs(x) <= 6.0) return maclaurin(static_cast<LD>(x));
  if (x > 6.0) return asymptotic_pos(static_cast<LD>(x));
  return step_from(maclaurin(-6.0L), -6.0L, static_cast<LD>(x));
}

}  // namespace

AiryValue airy(double x) {
  if (!(x >= -60.0 && x <= 10.0)) throw std::range_error("airy: x outside [-60, 10]");
  const Pair p = airy_ld(x);
  return {static_cast<double>(p.y), static_cast<double>(p.yp)};
}

std::vector<double> airy_zeros(std::size_t n) {
  if (n > 50) throw std::invalid_argument("airy_zeros: n <= 50");
  std::vector<double> zeros;
  zeros.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    double z = -std::pow(3.0 * kPi * (4.0 * j + 3.0) / 8.0, 2.0 / 3.0);
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const AiryValue v = airy(z);
      const double dz = v.ai / v.ai_prime;
      z -= dz;
      if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) {
        ok = std::abs(airy(z).ai) < 1e-12;
        if (ok) break;
      }
    }
    if (!ok) throw std::runtime_error("airy_zeros: Newton did not converge");
    zeros.push_back(z);
  }
  return zeros;
}

}  // namespace oufpt
