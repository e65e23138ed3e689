#include "longmem/predictor.hpp"

#include "longmem/errors.hpp"
#include "longmem/spectral.hpp"

namespace longmem {

const char* to_string(ForecastMethod m) {
  switch (m) {
    case ForecastMethod::WK_TRUNC: return "WK_TRUNC";
    case ForecastMethod::ARK: return "ARK";
    case ForecastMethod::WK_PLUGIN: return "WK_PLUGIN";
    case ForecastMethod::ARK_PLUGIN: return "ARK_PLUGIN";
  }
  return "?";
}

Forecast wk_truncated_predict(const CoeffSeq& arcoeffs, const SamplePath& window) {
  if (arcoeffs.convention != CoeffConvention::AR_INF) {
    throw ArgumentError("truncated Wiener-Kolmogorov forecast needs AR(inf) coefficients");
  }
  const std::size_t k = window.size();
  if (arcoeffs.size() < k + 1) {
    throw ArgumentError("coefficient prefix a_0..a_" + std::to_string(arcoeffs.size() - 1) +
                        " is shorter than the window of " + std::to_string(k));
  }
  const auto x = window.values();
  double acc = 0.0;
  for (std::size_t j = 1; j <= k; ++j) acc -= arcoeffs[j] * x[k - j];
  return {acc, ForecastMethod::WK_TRUNC, k};
}

Forecast ark_predict(const ArkModel& model_k, const SamplePath& window) {
  const std::size_t k = model_k.k;
  const std::size_t n = window.size();
  if (n < k) {
    throw ArgumentError("window of " + std::to_string(n) + " values is shorter than k = " +
                        std::to_string(k));
  }
  const auto x = window.values();
  double acc = 0.0;
  for (std::size_t j = 1; j <= k; ++j) acc += model_k.phi[j - 1] * x[n - j];
  return {acc, ForecastMethod::ARK, k};
}

namespace {

void check_plugin_inputs(const SamplePath& train, const SamplePath& window, std::size_t k) {
  if (k == 0) throw ArgumentError("order k must be at least 1");
  if (train.size() < kMinTrainLength) {
    throw ArgumentError("training path needs at least " + std::to_string(kMinTrainLength) +
                        " values");
  }
  if (window.size() < k) throw ArgumentError("window is shorter than k");
}

}  // namespace

Forecast wk_plugin_predict(const SamplePath& train, const SamplePath& window, std::size_t k) {
  check_plugin_inputs(train, window, k);
  const WhittleFit fit = whittle_fit(train);
  const CoeffSeq a = ar_inf_coeffs(LongMemoryModel::fi(fit.d_hat, fit.sigma2_hat), k);
  Forecast f = wk_truncated_predict(a, window.last(k));
  f.method = ForecastMethod::WK_PLUGIN;
  return f;
}

Forecast ark_plugin_predict(const SamplePath& train, const SamplePath& window, std::size_t k) {
  check_plugin_inputs(train, window, k);
  const ArkModel fitted = durbin_levinson(empirical_autocov(train, k), k);
  Forecast f = ark_predict(fitted, window);
  f.method = ForecastMethod::ARK_PLUGIN;
  return f;
}

}  // namespace longmem
