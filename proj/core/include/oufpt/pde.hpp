#pragma once

#include <functional>
#include <string>
#include <vector>

namespace oufpt {

/// A scalar field h(x, t) with validity ranges (evaluation outside is the
/// caller's concern; the ranges are bookkeeping for probe construction).
struct Field2D {
  std::function<double(double, double)> eval;
  double x_lo = -10.0, x_hi = 10.0;
  double t_lo = 0.0, t_hi = 10.0;
  double operator()(double x, double t) const { return eval(x, t); }
};

/// Central-difference residual of the forward equation
/// dh/dt - 1/2 d2h/dx2 - k x dh/dx - k h at (x, t); O(hx^2 + ht^2).
double fp_residual(const Field2D& h, double k, double x, double t, double hx, double ht);

/// The six one-parameter symmetry images of the OU forward equation; index in
/// 1..6, eps = 0 is the identity. Throws std::domain_error when the
/// transformed time leaves the equation's domain.
Field2D symmetry_image(const Field2D& h, double k, int index, double eps);

/// The composite map taking a solution vanishing on f to one vanishing on
/// S^{alpha,beta}_k f (alpha > 0), for t < zeta_{k,alpha,beta}.
Field2D h_alpha_beta(const Field2D& h, double k, double alpha, double beta);

struct SymmetryCompositionReport {
  bool in_domain = true;       // eps values defined (needs 2 k alpha != beta, k != 0)
  double max_abs_diff = 0.0;
  bool pass = false;
};

/// Composes the five stated symmetry maps (with the normalizing scaling) and
/// compares against h_alpha_beta on the probe grid.
SymmetryCompositionReport symmetry_composition_check(const Field2D& h, double k, double alpha, double beta,
                            const std::vector<double>& xs, const std::vector<double>& ts,
                            double tol = 1e-8);

/// The OU transition density from x0 as a field in the forward variable.
Field2D transition_field(double k, double x0 = 0.0);

/// x,t,residual CSV rows over the probe grid.
std::string residual_report_csv(const Field2D& h, double k,
                                const std::vector<double>& xs,
                                const std::vector<double>& ts, double hx, double ht);

}  // namespace oufpt
