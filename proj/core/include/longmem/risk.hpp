#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "longmem/fraccoeff.hpp"
#include "longmem/matrix.hpp"
#include "longmem/montecarlo.hpp"
#include "longmem/toeplitz.hpp"

namespace longmem {

/// Three-term split of the AR(k) excess risk, with δ_j = a_{j,k} − a_j and
/// T_j = Σ_{l>k} a_l σ(l − j):
///   term1 = Σ_{j,l=1..k} δ_j δ_l σ(j − l)      (≥ 0)
///   term2 = −2 Σ_{j=1..k} δ_j T_j
///   term3 = −Σ_{j=0..k} a_j T_j                 (= truncation excess)
/// so that term1 + term2 + term3 = ark_excess.
///
/// The display with the opposite overall sign (its terms sum to −ark_excess)
/// is returned by `literal()`; there the first term is negative, the second
/// positive and the third negative.
struct Decomposition {
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;

  double sum() const { return term1 + term2 + term3; }
  Decomposition literal() const { return {-term1, -term2, -term3}; }
};

struct RiskReport {
  LongMemoryModel model;
  std::size_t k = 0;
  double trunc_excess = 0.0;
  double ark_excess = 0.0;
  Decomposition decomposition;
  double ratio = 0.0;  ///< (trunc_excess − ark_excess) / trunc_excess
};

/// Value of an infinite sum together with its estimated absolute error and
/// the direct-summation cutoff that achieved it.
struct TailSum {
  double value = 0.0;
  double error = 0.0;
  std::size_t cutoff = 0;
};

inline constexpr double kDefaultTailTolerance = 1e-6;

/// E(X_{k+1} − X̃′_k(1))² − σ_ε² = −Σ_{j>k} a_j Σ_{l=0}^{k} a_l σ(j − l).
///
/// The j-sum is taken directly up to an adaptive cutoff J and the remainder is
/// extrapolated from a power-law fit s_j ≈ j^{d−2} P((J/8)/j) on [J/8, J],
/// summed through the Hurwitz zeta function. The error estimate compares
/// cutoffs J and J/2; AccuracyError is thrown if it stays above `rel_tol`.
double truncation_excess(const LongMemoryModel& model, std::size_t k,
                         double rel_tol = kDefaultTailTolerance);
TailSum truncation_excess_detail(const LongMemoryModel& model, std::size_t k,
                                 double rel_tol = kDefaultTailTolerance);

/// v(k) − σ_ε² from Durbin-Levinson on the exact autocovariance, checked
/// against the quadratic-form risk of the fitted coefficients.
double ark_excess(const LongMemoryModel& model, std::size_t k);

/// C(d) = Γ(1−2d)Γ(2d) / (Γ(−d)² Γ(d) Γ(1+d)).
double c_of_d(double d);

/// Large-d equivalent 1 / ((1−2d) Γ(−1/2)² Γ(1/2) Γ(3/2)).
double c_of_d_near_half(double d);

/// Relative improvement (trunc − ark)/trunc for FI(d), σ_ε² = 1.
///
/// Computed from the decomposition with closed-form AR(k) coefficients and
/// directly summed tails, and cross-checked against the route through
/// truncation_excess and ark_excess; disagreement beyond 1e-6 relative throws
/// InternalConsistencyError.
double r_of_k(double d, std::size_t k);

/// Both routes to r(k), without the consistency check.
struct RatioRoutes {
  double from_decomposition = 0.0;
  double from_excesses = 0.0;
};
RatioRoutes r_of_k_routes(double d, std::size_t k);

/// Decomposition for FI(d), σ_ε² = 1, with closed-form a_{j,k}.
Decomposition excess_decomposition(double d, std::size_t k,
                                   double rel_tol = kDefaultTailTolerance);

/// Decomposition for any model, with a_{j,k} = −φ_j taken from `model_k`.
Decomposition excess_decomposition(const LongMemoryModel& model, const ArkModel& model_k,
                                   double rel_tol = kDefaultTailTolerance);

RiskReport risk_report(const LongMemoryModel& model, std::size_t k);

/// H_ij = ∫_{−π}^{π} h^{(i)}(λ) h^{(j)}(λ) f²(λ) dλ with
/// h^{(r)}(λ) = −2[cos(rλ) − Σ_s φ_s cos((r − s)λ)]. Requires d < 1/4.
Matrix compute_H(const LongMemoryModel& model, const ArkModel& model_k);

/// Σ_k^{-1} H Σ_k^{-1} for the exact covariance of `model`.
Matrix sandwich_H(const LongMemoryModel& model, const ArkModel& model_k, const Matrix& H);

/// Monte Carlo estimate against a deterministic grid.
struct ScalingReport {
  std::vector<double> grid;
  std::vector<double> estimate;
  std::vector<double> stderr_;
  SlopeFit fit;
};

inline constexpr std::size_t kMinReplicates = 50;

/// E[(X̂_{T,k}(1) − X̂_k(1))²] for FI(d) over T_grid. Training paths are
/// independent of the prediction window, so the expectation over the window is
/// taken exactly: (φ̂ − φ)′ Σ_k (φ̂ − φ).
ScalingReport coeffcov_scaling(double d, std::size_t k, const std::vector<std::size_t>& T_grid,
                               std::size_t reps, std::uint64_t seed);

/// Same for the Whittle plug-in truncated forecast: (â − a)′ Σ_k (â − a).
ScalingReport estimation_error_scaling(double d, std::size_t k,
                                       const std::vector<std::size_t>& T_grid, std::size_t reps,
                                       std::uint64_t seed);

/// E(σ̂(0) − σ(0))² for FI(d) over n_grid, σ̂ undemeaned.
ScalingReport covmoment_scaling(double d, const std::vector<std::size_t>& n_grid,
                                std::size_t reps, std::uint64_t seed);

/// T·Cov(φ̂) against c·Σ^{-1}HΣ^{-1}.
struct HCheck {
  Matrix H;
  Matrix sandwich;   ///< Σ^{-1} H Σ^{-1}
  Matrix scaled_cov;  ///< T · sample covariance of φ̂
  double c_fit = 0.0;  ///< ⟨scaled_cov, sandwich⟩ / ⟨sandwich, sandwich⟩
  double better_c = 0.0;  ///< whichever of 2 and 4 is closer to c_fit on a log scale
};

HCheck h_matrix_mc(double d, std::size_t k, std::size_t T, std::size_t reps, std::uint64_t seed);

}  // namespace longmem
