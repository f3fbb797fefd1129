#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oufpt/boundary.hpp"

namespace oufpt {

/// Positive sigma-finite measure F: Dirac atoms plus an optional weighted
/// continuous part on [cont_lo, cont_hi], and the image mass parameter a.
struct ImageMeasure {
  struct Atom {
    double theta = 0.0;
    double weight = 1.0;
  };
  std::vector<Atom> atoms;
  std::function<double(double)> cont_density;  // nullable
  double cont_lo = -std::numeric_limits<double>::infinity();
  double cont_hi = std::numeric_limits<double>::infinity();
  double a = 1.0;

  bool has_continuous() const { return static_cast<bool>(cont_density); }
  /// Support touches (-inf, 0): boundary construction is two-sided.
  bool two_sided() const;

  /// {"atoms":[{"theta":..,"weight":..}],"cont":{"kind":"lebesgue-scaled",
  ///  "coeff":c,"lo":..,"hi":..},"a":..}; cont and lo/hi optional.
  static ImageMeasure from_json(const std::string& text);
  std::string to_json() const;
};

struct AdmissibilityReport {
  bool ok = true;
  std::vector<double> eps;
  std::vector<double> value;  // int e^{-eps theta/2} F(dtheta) over theta > 0
};

/// Checks the integrability condition at eps in {1e-3, 1, 1e3}; throws nothing,
/// flags divergence.
AdmissibilityReport check_admissibility(const ImageMeasure& m);

/// l(y, s) = int e^{theta y - theta^2 s/2} F(dtheta); +inf on overflow.
double l_function(const ImageMeasure& m, double y, double s);
/// log l(y, s); evaluated stably at any scale (atoms via logsumexp, continuous
/// part by a Gaussian substitution).
double log_l_function(const ImageMeasure& m, double y, double s);

/// h_k(x,t) = p_t(0,x) - (1/a) int p_t(theta,x) F(dtheta).
double image_kernel(const ImageMeasure& m, double k, double x, double t);

/// Implicit boundary: the x solving l(x e^{kt}/r(t), 1/r(t)) = a. One-sided
/// measures (support in (0, inf)) give a single positive boundary.
Boundary boundary_from_measure(const ImageMeasure& m, double k);
/// Two-sided construction; returns (f_plus, f_minus) with domain_end = t_a.
std::pair<Boundary, Boundary> boundary_from_measure_two_sided(const ImageMeasure& m,
                                                              double k);

/// First time a is outside l's range (domain end of the two-sided boundary);
/// +inf when the boundary never closes.
double images_domain_end(const ImageMeasure& m, double k);

/// Image-measure FPT density (e^{2kt}/(2 r^{3/2})) phi(f e^{kt}/sqrt r) E(theta | .),
/// the probability flux through the implicit boundary.
/// For symmetric two-sided measures pass f = f_plus; the full-support
/// integrals then give the total exit density.
double images_density(const ImageMeasure& m, double k, const Boundary& f, double t);

/// F^{alpha,beta}(dtheta) = e^{-(beta/alpha) theta^2/2} F(dtheta).
ImageMeasure transformed_measure(const ImageMeasure& m, double alpha, double beta);
/// Pushforward under theta -> c theta (the transformed-measure boundary uses
/// c = 1/alpha).
ImageMeasure scaled_measure(const ImageMeasure& m, double c);

struct ShapeCheckReport {
  bool monotone_ok = true;   // f(t) e^{kt} / r(t) decreasing
  bool concavity_ok = true;  // f'' - k^2 f <= 0
  double worst_monotone = 0.0;
  double worst_concavity = 0.0;
  std::size_t violations = 0;
};

/// Shape checks every image-measure boundary satisfies: f e^{kt}/r decreasing
/// and f'' - k^2 f <= 0, probed on a grid.
ShapeCheckReport boundary_shape_check(const Boundary& f, double k,
                               const std::vector<double>& probes,
                               double tol_scale = 1e-6);

}  // namespace oufpt
