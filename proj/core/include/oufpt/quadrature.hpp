#pragma once

#include <functional>

namespace oufpt {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Adaptive Gauss-Legendre 7/15 over [a, b]. The error estimate per panel is
/// |GL15 - GL7|; panels split until it drops below max(abs_tol, rel_tol*|I|)
/// scaled by the panel fraction. Node tables are computed once at startup by
/// Newton iteration on the Legendre recurrence.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-12,
                           int max_depth = 45, std::size_t max_panels = 2000);

/// integrate() but throws std::runtime_error when not converged.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12);

}  // namespace oufpt
