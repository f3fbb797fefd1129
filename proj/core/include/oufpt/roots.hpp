#pragma once

#include <functional>

namespace oufpt {

/// Brent's method on [lo, hi]; requires a sign change. x tolerance is
/// xtol_abs + xtol_rel*|x|. Throws std::runtime_error when the bracket is
/// invalid or iterations run out.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol_abs = 1e-14, double xtol_rel = 4e-16, int max_iter = 200);

/// Solves g(t) = y for strictly monotone g by expanding a bracket upward from
/// [lo, hi0] (doubling, capped at `limit`) and running Brent. Matches the
/// rho-inversion contract: |g(t) - y| driven below ~1e-12 max(1,|y|).
double inverse_monotone(const std::function<double(double)>& g, double y, double lo,
                        double hi0, double limit = 1e12);

}  // namespace oufpt
