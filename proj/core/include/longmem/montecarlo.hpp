#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace longmem {

/// Worker count: LONGMEM_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, n) on `threads` workers. Each index is handled
/// exactly once; the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

/// Pairwise (cascade) sum with a fixed split pattern.
double pairwise_sum(std::span<const double> xs);

/// Mean and standard error of the mean, both from pairwise sums.
struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MeanEstimate mean_estimate(std::span<const double> xs);

/// Weighted least-squares fit of log y on log x, with weights from the
/// standard errors of y (delta method). Zero standard errors give equal weights.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
SlopeFit loglog_slope(std::span<const double> x, std::span<const double> y,
                      std::span<const double> y_stderr);

/// Replicate identifier for grid point g and replicate r.
constexpr std::uint64_t replicate_id(std::size_t grid_index, std::size_t rep) {
  return (static_cast<std::uint64_t>(grid_index) << 32) | static_cast<std::uint64_t>(rep);
}

}  // namespace longmem
