#include "longmem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "longmem/errors.hpp"

namespace longmem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_g(double d, double lambda) { return -2.0 * d * std::log(2.0 * std::sin(lambda / 2.0)); }

double mean_ratio(const Periodogram& p, double d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < p.values.size(); ++j) {
    acc += p.values[j] * std::exp(-log_g(d, p.freqs[j]));
  }
  return acc / static_cast<double>(p.values.size());
}

}  // namespace

Periodogram periodogram(const SamplePath& sample) {
  const std::size_t t = sample.size();
  if (t < 2) throw ArgumentError("periodogram needs at least two observations");
  std::vector<double> y(sample.values().begin(), sample.values().end());
  double mean = 0.0;
  for (double x : y) mean += x;
  mean /= static_cast<double>(t);
  for (double& x : y) x -= mean;

  const auto dft = detail::dft_real(y);
  const double scale = 1.0 / (kTwoPi * static_cast<double>(t));
  Periodogram out;
  out.T = t;
  const std::size_t m = (t - 1) / 2;
  out.freqs.resize(m);
  out.values.resize(m);
  for (std::size_t j = 1; j <= m; ++j) {
    out.freqs[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(t);
    out.values[j - 1] = std::norm(dft[j]) * scale;
  }
  if (t % 2 == 0) out.nyquist = std::norm(dft[t / 2]) * scale;
  return out;
}

double whittle_sigma2(const Periodogram& pgram, double d) {
  if (pgram.values.empty()) throw ArgumentError("periodogram has no Fourier frequencies");
  return kTwoPi * mean_ratio(pgram, d);
}

double whittle_objective(const Periodogram& pgram, double d) {
  if (pgram.values.empty()) throw ArgumentError("periodogram has no Fourier frequencies");
  double mean_log = 0.0;
  for (double lambda : pgram.freqs) mean_log += log_g(d, lambda);
  mean_log /= static_cast<double>(pgram.freqs.size());
  return std::log(mean_ratio(pgram, d)) + mean_log;
}

WhittleFit whittle_fit(const SamplePath& sample, std::pair<double, double> d_bounds) {
  const auto [lo, hi] = d_bounds;
  if (!(lo > 0.0 && hi < 0.5 && lo < hi)) {
    throw ArgumentError("Whittle search bounds must satisfy 0 < lo < hi < 1/2");
  }
  if (sample.size() < 64) throw ArgumentError("Whittle fitting needs at least 64 observations");
  const Periodogram pgram = periodogram(sample);

  WhittleFit fit;
  auto eval = [&](double d) {
    const double v = whittle_objective(pgram, d);
    if (!std::isfinite(v)) throw EstimationError("Whittle objective is not finite (degenerate sample)");
    fit.grid_trace.emplace_back(d, v);
    return v;
  };

  const std::size_t n = kWhittleGridPoints;
  std::vector<double> grid(n), vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    vals[i] = eval(grid[i]);
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == n ? n - 1 : best + 1];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double e = a + inv_phi * (b - a);
  double fc = eval(c), fe = eval(e);
  while (b - a > kWhittleTolerance) {
    if (fc <= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + inv_phi * (b - a);
      fe = eval(e);
    }
  }

  const auto winner = std::min_element(fit.grid_trace.begin(), fit.grid_trace.end(),
                                       [](const auto& x, const auto& y) { return x.second < y.second; });
  fit.d_hat = winner->first;
  fit.objective = winner->second;
  fit.sigma2_hat = whittle_sigma2(pgram, fit.d_hat);
  return fit;
}

}  // namespace longmem
