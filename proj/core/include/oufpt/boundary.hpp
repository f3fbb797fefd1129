#pragma once

#include <functional>
#include <limits>
#include <memory>

namespace oufpt {

/// A time-varying boundary: an evaluable function on [0, domain_end) of
/// constant sign near 0, with an optional analytic derivative and a cached
/// running integral tau(t) = int_0^t f(z)^-2 dz.
///
/// Boundaries are immutable once built; copies share the implementation and
/// its tau cache, which is internally synchronized.
class Boundary {
 public:
  Boundary() = default;

  /// deriv may be empty (centered differences with step 1e-6 max(1,t) are
  /// used); sign_hint 0 probes the sign near t = 0.
  static Boundary from_function(std::function<double(double)> eval,
                                double domain_end = std::numeric_limits<double>::infinity(),
                                std::function<double(double)> deriv = nullptr,
                                int sign_hint = 0);
  static Boundary constant(double a);
  static Boundary affine(double a, double b);  // a + b t

  bool valid() const { return impl_ != nullptr; }
  double operator()(double t) const;  // throws std::domain_error outside [0, domain_end)
  double deriv(double t) const;
  double second_deriv(double t) const;
  bool has_analytic_deriv() const;
  double domain_end() const;
  int sign() const;

  /// tau f(t) = int_0^t f(z)^-2 dz via cached panel quadrature; throws
  /// std::runtime_error if |f| < 1e-14 at a quadrature node.
  double tau(double t) const;
  /// rho o tau: the t with tau(t) = y; throws when y is beyond the range
  /// reachable inside the domain.
  double tau_inverse(double y) const;
  /// Largest cached/reachable tau value (probes up to min(domain_end, 1e7)).
  double tau_sup() const;
  /// True when tau reaches y inside the domain (extends the cache only as far
  /// as needed, unlike tau_sup).
  bool tau_reaches(double y) const;

 private:
  std::shared_ptr<struct BoundaryImpl> impl_;
};

}  // namespace oufpt
