#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace longmem::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using Buffer = std::unique_ptr<T[], FftwFree>;

template <class T>
Buffer<T> allocate(std::size_t n) {
  return Buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

}  // namespace

std::vector<std::complex<double>> dft_real(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t i = 0; i < result.size(); ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

std::vector<std::complex<double>> dft_complex(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto in = allocate<fftw_complex>(n);
  auto out = allocate<fftw_complex>(n);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD,
                                FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = x[i].real();
    in[i][1] = x[i].imag();
  }
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

}  // namespace longmem::detail
