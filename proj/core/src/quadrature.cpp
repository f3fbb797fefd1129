#include "oufpt/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oufpt {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <int N>
struct GaussRule {
  std::array<double, N> node;
  std::array<double, N> weight;
};

// Gauss-Legendre nodes on [-1,1] via Newton on P_N, textbook recurrence.
template <int N>
GaussRule<N> make_rule() {
  GaussRule<N> rule{};
  const int m = (N + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (N + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < N; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = N * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.node[i] = -x;
    rule.node[N - 1 - i] = x;
    rule.weight[i] = rule.weight[N - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

const GaussRule<7>& rule7() {
  static const GaussRule<7> r = make_rule<7>();
  return r;
}
const GaussRule<15>& rule15() {
  static const GaussRule<15> r = make_rule<15>();
  return r;
}

struct Panel {
  double a, b;
  double value, error;
  int depth;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double coarse = 0.0, fine = 0.0;
  for (int i = 0; i < 7; ++i) coarse += rule7().weight[i] * f(c + h * rule7().node[i]);
  for (int i = 0; i < 15; ++i) fine += rule15().weight[i] * f(c + h * rule15().node[i]);
  return {a, b, fine * h, std::abs(fine - coarse) * h, depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_depth,
                           std::size_t max_panels) {
  QuadratureResult acc;
  if (a == b) return acc;
  const std::size_t kMaxPanels = max_panels;
  std::size_t panels = 1;
  std::vector<Panel> stack{eval_panel(f, a, b, 0)};
  double total = stack.front().value;  // running estimate used by rel_tol
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double local_tol =
        std::max(abs_tol * (p.b - p.a) / (b - a), rel_tol * std::abs(total));
    if (p.error <= local_tol || p.depth >= max_depth || panels >= kMaxPanels) {
      acc.value += p.value;
      acc.error_estimate += p.error;
      if (p.error > local_tol) acc.converged = false;
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    const Panel left = eval_panel(f, p.a, mid, p.depth + 1);
    const Panel right = eval_panel(f, mid, p.b, p.depth + 1);
    total += left.value + right.value - p.value;
    panels += 2;
    stack.push_back(left);
    stack.push_back(right);
  }
  return acc;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
  const QuadratureResult res = integrate(f, a, b, abs_tol, rel_tol);
  if (!res.converged) throw std::runtime_error("quadrature did not converge");
  return res.value;
}

}  // namespace oufpt
