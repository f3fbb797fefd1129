#pragma once

#include <functional>
#include <optional>

#include "oufpt/boundary.hpp"

namespace oufpt {

/// Parameters of the boundary map S^{alpha,beta}_k.
struct TransformParams {
  double alpha = 1.0;  // must be nonzero
  double beta = 0.0;
  double k = 0.0;
};

/// Membership tag for the space A_k(a,b).
struct SpaceTag {
  double a = 0.0;
  double b = 0.0;
};

/// Horizon zeta_{k,alpha,beta} of the transformed curve (may be +inf).
double zeta_horizon(const TransformParams& p);

/// Lambda_k f(t) = e^{k s(t)} f(s(t)) (OU boundary -> BM boundary).
Boundary lambda_k(const Boundary& f, double k);
/// Lambda_k^{-1} f(t) = e^{-kt} f(r(t)).
Boundary lambda_k_inv(const Boundary& f, double k);

/// The involution Sigma_k f(t) = e^{-k rho.tau f(r(t)) - k t} / f(rho.tau f(r(t))).
/// Acts on |f|; the sign rides along.
Boundary sigma_k(const Boundary& f, double k);

/// Pi^{alpha,beta} f(t) = f(t)(alpha + beta tau f(t)), on |f| with sign metadata.
Boundary pi_ab(const Boundary& f, double alpha, double beta);

/// Closed form of S^{alpha,beta}_k f; domain ends at zeta_{k,alpha,beta}
/// intersected with the pullback of f's domain.
Boundary s_transform(const Boundary& f, const TransformParams& p);

/// Compositional routes used by the equality tests.
Boundary s_transform_via_sigma(const Boundary& f, const TransformParams& p);
Boundary s_transform_via_lambda(const Boundary& f, const TransformParams& p);

/// Group law: S^{a,b}_k o S^{a',b'}_k = S^{a a', a b' + b/a'}_k.
TransformParams compose_transforms(const TransformParams& outer,
                                   const TransformParams& inner);

struct MappedSpaceTag {
  double a = 0.0;                 // +inf in the unbounded branch
  std::optional<double> b;        // empty outside the tabulated cases (the
                                  // remaining branch needs f itself)
};

/// Case tables of the space map A_k(a,b) -> A_k(a_{alpha,beta}, b^f_{alpha,beta}).
MappedSpaceTag space_tag_map(const SpaceTag& tag, const TransformParams& p);

/// The b such that f in A_k(a, b), from tau f(sgn(k) s(sgn(k) a)).
double space_tag_b(const Boundary& f, double k, double a);

/// f^3 f'' - k^2 f^4 - (-mu(s(tau f)) + k^2)/(2k tau f + 1)^2 at time t.
double nonlinear_ode_residual(const Boundary& f,
                              const std::function<double(double)>& mu, double k, double t);

/// Generic monotone inversion (the rho operator): t with g(t) = y.
double rho_inverse(const std::function<double(double)>& g, double y, double lo = 0.0,
                   double hi0 = 1.0);

}  // namespace oufpt
