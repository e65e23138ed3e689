#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "longmem/fraccoeff.hpp"
#include "longmem/sample_path.hpp"

namespace longmem {

/// Order-k autoregressive predictor.
///
/// `phi` uses the forecast sign convention: X̂_{n+1} = Σ_{j=1}^{k} φ_j X_{n+1−j}.
/// The AR(∞)-style coefficient a_{j,k} (a_{0,k} = 1) is −φ_j.
struct ArkModel {
  std::size_t k = 0;
  std::vector<double> phi;       ///< φ_1..φ_k
  double v = 0.0;                ///< innovation variance v(k)
  std::vector<double> partials;  ///< reflection coefficients a_{n,n}, n = 1..k
};

/// Solves the nested Yule-Walker systems of orders 1..k.
///
/// Throws NotPositiveDefinite naming the first order n at which |a_{n,n}| ≥ 1
/// or v(n) ≤ 0.
ArkModel durbin_levinson(const AutocovSeq& acov, std::size_t k);

/// σ̂(j) = (1/T) Σ_{t=1}^{T−j} Y_t Y_{t+j}, j = 0..maxlag. With `demean` the
/// sample mean is subtracted first.
AutocovSeq empirical_autocov(const SamplePath& sample, std::size_t maxlag, bool demean = false);

/// Closed-form order-k predictor for FI(d), through log-gamma:
/// a_{j,k} = Γ(k+1)Γ(j−d)Γ(k−d−j+1) / (Γ(k−j+1)Γ(j+1)Γ(−d)Γ(k−d+1)).
/// v and partials come from a Durbin-Levinson pass on the exact autocovariance.
ArkModel fi_ark_closed_form(double d, std::size_t k);

/// Solves Σ_k x = rhs where (Σ_k)_{ij} = σ(|i−j|), by dense Cholesky.
std::vector<double> toeplitz_solve(const AutocovSeq& acov, std::span<const double> rhs,
                                   std::size_t k);

/// max_j |Σ_i φ_i σ(i−j) − σ(j)| / max_j |σ(j)|, over j = 1..k.
double yule_walker_residual(const ArkModel& model, const AutocovSeq& acov);

/// E(X_{k+1} − Σ φ_j X_{k+1−j})² = σ(0) − 2Σφ_jσ(j) + ΣΣφ_iφ_jσ(i−j).
double prediction_mse(std::span<const double> phi, const AutocovSeq& acov);

}  // namespace longmem
