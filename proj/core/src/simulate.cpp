#include "longmem/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fft.hpp"
#include "longmem/errors.hpp"
#include "longmem/rng.hpp"

namespace longmem {

const char* to_string(SimulationMethod m) {
  switch (m) {
    case SimulationMethod::AUTO: return "auto";
    case SimulationMethod::CIRCULANT: return "circulant";
    case SimulationMethod::INNOVATIONS: return "innovations";
  }
  return "?";
}

std::vector<double> circulant_eigenvalues(const AutocovSeq& acov, std::size_t n) {
  if (n < 2) return {acov[0]};
  const std::size_t m = 2 * (n - 1);
  std::vector<double> c(m);
  for (std::size_t i = 0; i < n; ++i) c[i] = acov[i];
  for (std::size_t i = n; i < m; ++i) c[i] = acov[m - i];
  const auto half = detail::dft_real(c);
  std::vector<double> lambda(m);
  for (std::size_t j = 0; j < m; ++j) lambda[j] = half[j <= m / 2 ? j : m - j].real();
  return lambda;
}

namespace {

bool embeddable(const std::vector<double>& lambda) {
  const double top = *std::max_element(lambda.begin(), lambda.end());
  return std::all_of(lambda.begin(), lambda.end(),
                     [&](double l) { return l >= -kEmbeddingTolerance * top; });
}

std::vector<double> circulant_path(const std::vector<double>& lambda, std::size_t n,
                                   NormalStream& rng) {
  const std::size_t m = lambda.size();
  std::vector<std::complex<double>> w(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double scale = std::sqrt(std::max(lambda[j], 0.0) / static_cast<double>(m));
    const double re = rng.normal();
    const double im = rng.normal();
    w[j] = {scale * re, scale * im};
  }
  const auto x = detail::dft_complex(w);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i].real();
  return out;
}

std::vector<double> innovations_path(const AutocovSeq& acov, std::size_t n, NormalStream& rng) {
  std::vector<double> x(n), phi, prev;
  double v = acov[0];
  if (!(v > 0.0)) throw NotPositiveDefinite(0);
  x[0] = std::sqrt(v) * rng.normal();
  phi.reserve(n);
  prev.reserve(n);
  for (std::size_t t = 1; t < n; ++t) {
    double num = acov[t];
    for (std::size_t j = 1; j < t; ++j) num -= phi[j - 1] * acov[t - j];
    const double a = num / v;
    if (!(std::abs(a) < 1.0)) throw NotPositiveDefinite(t);
    prev = phi;
    for (std::size_t j = 1; j < t; ++j) phi[j - 1] = prev[j - 1] - a * prev[t - j - 1];
    phi.push_back(a);
    v *= 1.0 - a * a;
    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += phi[j - 1] * x[t - j];
    x[t] = mean + std::sqrt(v) * rng.normal();
  }
  return x;
}

}  // namespace

SimulationOutcome simulate_path(const SimulationPlan& plan) {
  if (plan.n == 0) throw ArgumentError("path length must be at least 1");
  if (plan.acov.size() < plan.n) {
    throw ArgumentError("autocovariance prefix shorter than the requested path");
  }
  NormalStream rng(plan.seed, plan.replicate, plan.stream);
  SimulationMethod used = plan.method;
  std::vector<double> values;
  if (plan.n == 1) {
    used = plan.method == SimulationMethod::AUTO ? SimulationMethod::CIRCULANT : plan.method;
    values = {std::sqrt(plan.acov[0]) * rng.normal()};
  } else if (plan.method != SimulationMethod::INNOVATIONS) {
    const auto lambda = circulant_eigenvalues(plan.acov, plan.n);
    if (embeddable(lambda)) {
      used = SimulationMethod::CIRCULANT;
      values = circulant_path(lambda, plan.n, rng);
    } else if (plan.method == SimulationMethod::CIRCULANT) {
      throw NotPositiveDefinite(plan.n);
    } else {
      used = SimulationMethod::INNOVATIONS;
    }
  }
  if (values.empty()) {
    used = SimulationMethod::INNOVATIONS;
    values = innovations_path(plan.acov, plan.n, rng);
  }
  return {SamplePath(std::move(values), plan.seed, plan.acov.model), used};
}

SamplePath gaussian_sample(const SimulationPlan& plan) { return simulate_path(plan).path; }

}  // namespace longmem
