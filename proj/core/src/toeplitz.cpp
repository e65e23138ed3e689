#include "longmem/toeplitz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "longmem/errors.hpp"
#include "longmem/special.hpp"

namespace longmem {

ArkModel durbin_levinson(const AutocovSeq& acov, std::size_t k) {
  if (acov.size() < k + 1) {
    throw ArgumentError("Durbin-Levinson of order " + std::to_string(k) + " needs " +
                        std::to_string(k + 1) + " autocovariances, got " +
                        std::to_string(acov.size()));
  }
  if (!(acov[0] > 0.0)) throw NotPositiveDefinite(0);

  ArkModel out;
  out.k = k;
  out.phi.assign(k, 0.0);
  out.partials.reserve(k);
  std::vector<double> prev(k, 0.0);
  double v = acov[0];
  for (std::size_t n = 1; n <= k; ++n) {
    double num = acov[n];
    for (std::size_t j = 1; j < n; ++j) num -= out.phi[j - 1] * acov[n - j];
    const double ann = num / v;
    if (!(std::abs(ann) < 1.0)) throw NotPositiveDefinite(n);
    std::copy_n(out.phi.begin(), n - 1, prev.begin());
    for (std::size_t j = 1; j < n; ++j) out.phi[j - 1] = prev[j - 1] - ann * prev[n - j - 1];
    out.phi[n - 1] = ann;
    v *= (1.0 - ann * ann);
    if (!(v > 0.0)) throw NotPositiveDefinite(n);
    out.partials.push_back(ann);
  }
  out.v = v;
  return out;
}

AutocovSeq empirical_autocov(const SamplePath& sample, std::size_t maxlag, bool demean) {
  const std::size_t t = sample.size();
  if (maxlag >= t) {
    throw ArgumentError("maxlag " + std::to_string(maxlag) + " must be below the sample length " +
                        std::to_string(t));
  }
  std::vector<double> y(sample.values().begin(), sample.values().end());
  if (demean) {
    double mean = 0.0;
    for (double x : y) mean += x;
    mean /= static_cast<double>(t);
    for (double& x : y) x -= mean;
  }
  std::vector<double> s(maxlag + 1);
  for (std::size_t lag = 0; lag <= maxlag; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < t; ++i) acc += y[i] * y[i + lag];
    s[lag] = acc / static_cast<double>(t);
  }
  return {std::move(s), AutocovSource::EMPIRICAL, sample.model()};
}

ArkModel fi_ark_closed_form(double d, std::size_t k) {
  check_memory_parameter(d);
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const double kk = static_cast<double>(k);
  const SignedLog g_md = log_gamma(-d);
  const double common =
      log_gamma(kk + 1.0).log_abs - g_md.log_abs - log_gamma(kk - d + 1.0).log_abs;
  std::vector<double> phi(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const double jj = static_cast<double>(j);
    const double lg = common + log_gamma(jj - d).log_abs + log_gamma(kk - d - jj + 1.0).log_abs -
                      log_gamma(kk - jj + 1.0).log_abs - log_gamma(jj + 1.0).log_abs;
    // a_{j,k} carries the sign of Γ(−d) < 0; φ_j = −a_{j,k}.
    phi[j - 1] = -static_cast<double>(g_md.sign) * std::exp(lg);
  }
  ArkModel out = durbin_levinson(exact_autocov(LongMemoryModel::fi(d), k), k);
  out.phi = std::move(phi);
  return out;
}

std::vector<double> toeplitz_solve(const AutocovSeq& acov, std::span<const double> rhs,
                                   std::size_t k) {
  if (rhs.size() != k) throw ArgumentError("right-hand side length must equal k");
  if (acov.size() < k) throw ArgumentError("autocovariance prefix shorter than k");
  const auto n = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sigma(i, j) = acov[static_cast<std::size_t>(std::abs(i - j))];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    // Locate the failing order for the error message.
    if (k >= 2) durbin_levinson(acov, k - 1);
    throw NotPositiveDefinite(k);
  }
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  const Eigen::VectorXd x = llt.solve(b);
  return {x.data(), x.data() + n};
}

double yule_walker_residual(const ArkModel& model, const AutocovSeq& acov) {
  const std::size_t k = model.k;
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    double lhs = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      lhs += model.phi[i - 1] * acov.at(static_cast<long long>(i) - static_cast<long long>(j));
    }
    worst = std::max(worst, std::abs(lhs - acov[j]));
    scale = std::max(scale, std::abs(acov[j]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double prediction_mse(std::span<const double> phi, const AutocovSeq& acov) {
  const std::size_t k = phi.size();
  double lin = 0.0, quad = 0.0;
  for (std::size_t j = 1; j <= k; ++j) lin += phi[j - 1] * acov[j];
  for (std::size_t i = 1; i <= k; ++i) {
    double row = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      row += phi[j - 1] * acov.at(static_cast<long long>(i) - static_cast<long long>(j));
    }
    quad += phi[i - 1] * row;
  }
  return acov[0] - 2.0 * lin + quad;
}

}  // namespace longmem
