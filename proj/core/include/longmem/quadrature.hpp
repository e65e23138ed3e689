#pragma once

#include <functional>

namespace longmem {

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integral of a smooth function on [a, b].
double integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// ∫_0^b f(λ) dλ for f with an integrable power singularity f(λ) ~ λ^{-alpha}
/// at the origin, 0 <= alpha < 1.
///
/// The interval is split at min(b, 1/2); on the inner piece the substitution
/// u = λ^{1-alpha} removes the singularity before Gauss-Kronrod is applied.
double integrate_singular_at_zero(const Integrand& f, double alpha, double b,
                                  double rel_tol = 1e-12);

}  // namespace longmem
