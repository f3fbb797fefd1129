#pragma once

#include <functional>
#include <optional>

#include "oufpt/mc.hpp"
#include "oufpt/transforms.hpp"

namespace oufpt {

/// A first-passage density on (0, support_end). Evaluation returns nullopt
/// past the support ("out of support" is distinct from a zero density).
/// mc-grid sources interpolate a DensityGrid piecewise-constantly and also
/// carry the per-bin confidence half-widths.
class DensityFn {
 public:
  enum class Source { closed_form, mc_grid, transformed };

  static DensityFn closed_form(std::function<double(double)> eval, double support_end);
  static DensityFn from_grid(const DensityGrid& grid);

  std::optional<double> operator()(double t) const;
  /// Confidence half-width of the value at t (0 for closed forms).
  std::optional<double> half_width(double t) const;
  double support_end() const { return support_end_; }
  Source source() const { return source_; }
  double confidence() const { return confidence_; }

  static DensityFn make(Source src, double support_end,
                        std::function<std::optional<double>(double)> eval,
                        std::function<std::optional<double>(double)> hw,
                        double confidence);

 private:
  Source source_ = Source::closed_form;
  double support_end_ = 0.0;
  double confidence_ = 0.0;
  std::function<std::optional<double>(double)> eval_;
  std::function<std::optional<double>(double)> half_width_;
};

/// The boundary-crossing identity: density of T_k^{S^{alpha,beta}_k f} from
/// the density of T_k^f,
///   e^{2kt} a^2 (1+abr)^{-3/2} (2ku+1)^{-1}
///     exp(-ab (S f(t))^2 e^{2kt} / (2(1+abr))) p_f(s(u)),   u = a^2 r/(1+abr).
DensityFn transform_density(const DensityFn& p_f, const Boundary& f,
                            const TransformParams& p);

/// BM specialization (k = 0).
DensityFn bm_transform_density(const DensityFn& p_f, const Boundary& f, double alpha,
                               double beta);

/// p_k(t) = e^{2kt} p_bm(r(t)) maps a BM FPT density (to Lambda_k f) to the OU
/// density (to f); the inverse divides and substitutes s.
DensityFn timechange_density(const DensityFn& p_bm, double k);
DensityFn timechange_density_inverse(const DensityFn& p_ou, double k);

/// f*(t) = f(t) - mu (1 - e^{-kt}): drifted OU to f == driftless OU to f*.
Boundary drift_reduce(const Boundary& f, double mu, double k);

}  // namespace oufpt
