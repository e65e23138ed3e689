#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "longmem/sample_path.hpp"

namespace longmem {

/// I_T(λ) = |Σ_t e^{itλ}(Y_t − Ȳ)|² / (2πT) at λ_j = 2πj/T, j = 1..⌊(T−1)/2⌋.
///
/// For even T the Nyquist ordinate I_T(π) is kept apart in `nyquist`; it is
/// not a Whittle frequency but is needed for Parseval and for T = 2.
struct Periodogram {
  std::vector<double> freqs;
  std::vector<double> values;
  std::size_t T = 0;
  std::optional<double> nyquist;
  bool demeaned = true;
};

struct WhittleFit {
  double d_hat = 0.0;
  double sigma2_hat = 0.0;
  double objective = 0.0;
  std::vector<std::pair<double, double>> grid_trace;  ///< (d, objective)
};

Periodogram periodogram(const SamplePath& sample);

/// Profiled Whittle contrast for FI(d). With g_d(λ) = (2 sin(λ/2))^{−2d} and m
/// Fourier frequencies: log((1/m)Σ I/g_d) + (1/m)Σ log g_d.
double whittle_objective(const Periodogram& pgram, double d);

/// σ̂² = 2π (1/m) Σ I(λ_j)/g_d(λ_j).
double whittle_sigma2(const Periodogram& pgram, double d);

inline constexpr std::pair<double, double> kDefaultWhittleBounds{1e-4, 0.5 - 1e-4};
inline constexpr std::size_t kWhittleGridPoints = 50;
inline constexpr double kWhittleTolerance = 1e-5;

/// 50-point grid scan over `d_bounds`, then golden-section refinement around
/// the best grid point until the bracket is narrower than 1e-5.
WhittleFit whittle_fit(const SamplePath& sample,
                       std::pair<double, double> d_bounds = kDefaultWhittleBounds);

}  // namespace longmem
