#pragma once

namespace longmem {

/// log|Γ(x)| together with the sign of Γ(x).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

/// Log-gamma kernel used by every gamma-function evaluation in the library.
/// Reentrant (does not touch the global `signgam`). Poles throw DomainError.
SignedLog log_gamma(double x);

/// Hurwitz zeta ζ(s, q) = Σ_{n≥0} (q + n)^{-s}, for s > 1 and q > 0.
double hurwitz_zeta(double s, double q);

}  // namespace longmem
