#include "longmem/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "longmem/errors.hpp"

namespace longmem {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("LONGMEM_THREADS")) {
    std::size_t n = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc() && ptr == end && n > 0) return n;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads) {
  if (threads == 0) threads = default_thread_count();
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first) first = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanEstimate mean_estimate(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) return {};
  const double mean = pairwise_sum(xs) / n;
  std::vector<double> sq(xs.size());
  std::transform(xs.begin(), xs.end(), sq.begin(), [&](double x) { return (x - mean) * (x - mean); });
  const double var = xs.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

SlopeFit loglog_slope(std::span<const double> x, std::span<const double> y,
                      std::span<const double> y_stderr) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || (!y_stderr.empty() && y_stderr.size() != n)) {
    throw ArgumentError("slope fit needs at least two matching (x, y) points");
  }
  std::vector<double> lx(n), ly(n), w(n, 1.0);
  bool weighted = !y_stderr.empty();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    if (weighted) {
      const double rel = y_stderr[i] / y[i];
      if (!(rel > 0.0)) weighted = false;
      else w[i] = 1.0 / (rel * rel);
    }
  }
  if (!weighted) std::fill(w.begin(), w.end(), 1.0);
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
    sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
  }
  SlopeFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  if (weighted) {
    out.slope_stderr = std::sqrt(1.0 / sxx);
  } else if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - out.intercept - out.slope * lx[i];
      rss += r * r;
    }
    out.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return out;
}

}  // namespace longmem
