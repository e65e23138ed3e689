#pragma once

#include <cstddef>

#include "longmem/fraccoeff.hpp"
#include "longmem/sample_path.hpp"
#include "longmem/toeplitz.hpp"

namespace longmem {

enum class ForecastMethod { WK_TRUNC, ARK, WK_PLUGIN, ARK_PLUGIN };

const char* to_string(ForecastMethod m);

/// One-step forecast of the value following the last element of a window.
struct Forecast {
  double value = 0.0;
  ForecastMethod method = ForecastMethod::WK_TRUNC;
  std::size_t order = 0;
};

/// Truncated Wiener-Kolmogorov forecast −Σ_{j=1}^{k} a_j X_{k+1−j}, with k the
/// window length and X_k its last value.
Forecast wk_truncated_predict(const CoeffSeq& arcoeffs, const SamplePath& window);

/// Σ_{j=1}^{k} φ_j X_{n+1−j} over the k most recent values of the window.
Forecast ark_predict(const ArkModel& model_k, const SamplePath& window);

/// Whittle-fits FI(d̂) on `train`, then applies the truncated WK forecast to the
/// last k values of `window`. `train` and `window` should be independent.
Forecast wk_plugin_predict(const SamplePath& train, const SamplePath& window, std::size_t k);

/// Yule-Walker AR(k) fitted on `train` (undemeaned empirical covariances), then
/// applied to `window`.
Forecast ark_plugin_predict(const SamplePath& train, const SamplePath& window, std::size_t k);

/// Minimum training length accepted by the plug-in forecasts.
inline constexpr std::size_t kMinTrainLength = 64;

}  // namespace longmem
