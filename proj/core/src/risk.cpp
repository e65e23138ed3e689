#include "longmem/risk.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/simulate.hpp"
#include "longmem/spectral.hpp"
#include "longmem/special.hpp"

namespace longmem {

namespace {

constexpr std::size_t kMinCutoff = 4096;
constexpr std::size_t kMaxCutoff = std::size_t{1} << 22;
constexpr std::size_t kCutoffPerOrder = 64;
constexpr std::size_t kFitPoints = 32;
constexpr Eigen::Index kFitTerms = 5;
constexpr double kRatioTolerance = 1e-9;
constexpr double kRatioAgreement = 1e-6;

// Σ_{j=first}^{J} s_j plus the extrapolated remainder Σ_{j>J} s_j, with
// s_j ≈ j^p Σ_n α_n u^n, u = (J/8)/j, fitted on [J/8, J].
double extrapolated_sum(const std::vector<double>& s, std::size_t first, std::size_t cutoff,
                        double p) {
  long double direct = 0.0L;
  for (std::size_t j = first; j <= cutoff; ++j) direct += s[j];

  const double j0 = static_cast<double>(cutoff / 8);
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(kFitPoints), kFitTerms);
  Eigen::VectorXd target(static_cast<Eigen::Index>(kFitPoints));
  for (std::size_t i = 0; i < kFitPoints; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kFitPoints - 1);
    auto j = static_cast<std::size_t>(std::llround(j0 * std::pow(8.0, t)));
    j = std::clamp<std::size_t>(j, cutoff / 8, cutoff);
    const double jj = static_cast<double>(j);
    const double u = j0 / jj;
    const auto row = static_cast<Eigen::Index>(i);
    target(row) = s[j] / std::pow(jj, p);
    double un = 1.0;
    for (Eigen::Index n = 0; n < kFitTerms; ++n, un *= u) basis(row, n) = un;
  }
  const Eigen::VectorXd alpha = basis.colPivHouseholderQr().solve(target);

  const double q = static_cast<double>(cutoff + 1);
  double tail = 0.0;
  double scale = 1.0;
  for (Eigen::Index n = 0; n < kFitTerms; ++n, scale *= j0) {
    tail += alpha(n) * scale * hurwitz_zeta(static_cast<double>(n) - p, q);
  }
  return static_cast<double>(direct) + tail;
}

std::size_t initial_cutoff(std::size_t k) {
  return std::max(kMinCutoff, kCutoffPerOrder * std::max<std::size_t>(k, 1));
}

[[noreturn]] void give_up(const char* what, double achieved) {
  throw AccuracyError(std::string(what) + ": tail extrapolation reached relative error " +
                          std::to_string(achieved) + " at the maximum cutoff",
                      achieved);
}

// T_j = Σ_{l>k} a_l σ(l − j) for j = 0..k, each with its own error estimate.
std::vector<TailSum> tail_inner_sums(const LongMemoryModel& model, std::size_t k, double rel_tol) {
  const double p = model.d() - 2.0;
  for (std::size_t cutoff = initial_cutoff(k);; cutoff = std::min(4 * cutoff, kMaxCutoff)) {
    const auto a = ar_inf_coeffs(model, cutoff).values;
    const auto sigma = exact_autocov(model, cutoff).values;
    std::vector<TailSum> out(k + 1);
    std::vector<double> terms(cutoff + 1, 0.0);
    double worst = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      for (std::size_t l = k + 1; l <= cutoff; ++l) terms[l] = a[l] * sigma[l - j];
      const double hi = extrapolated_sum(terms, k + 1, cutoff, p);
      const double lo = extrapolated_sum(terms, k + 1, cutoff / 2, p);
      out[j] = {hi, std::abs(hi - lo), cutoff};
      if (hi != 0.0) worst = std::max(worst, std::abs(hi - lo) / std::abs(hi));
    }
    if (worst <= rel_tol) return out;
    if (cutoff >= kMaxCutoff) give_up("inner tail sums", worst);
  }
}

Matrix covariance_matrix(const AutocovSeq& acov, std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = acov[i > j ? i - j : j - i];
  }
  return m;
}

double quadratic_form(const Matrix& m, const std::vector<double>& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) row += m(i, j) * x[j];
    acc += x[i] * row;
  }
  return acc;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    }
  }
  return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (std::size_t i = 0; i < out.rows; ++i) {
    for (std::size_t j = 0; j < out.cols; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

void check_replicates(std::size_t reps) {
  if (reps < kMinReplicates) {
    throw StatisticalPowerError("Monte Carlo needs at least " + std::to_string(kMinReplicates) +
                                " replicates, got " + std::to_string(reps));
  }
}

void check_grid(const std::vector<std::size_t>& grid) {
  if (grid.size() < 2) throw ArgumentError("scaling grid needs at least two points");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw ArgumentError("scaling grid must be strictly increasing");
  }
}

// Runs reps replicates at each grid point; the per-replicate value comes from
// `one(grid_index, path)` where path is an exact FI(d) sample of length grid[g].
template <class OneReplicate>
ScalingReport run_scaling(double d, const std::vector<std::size_t>& grid, std::size_t reps,
                          std::uint64_t seed, OneReplicate one) {
  check_replicates(reps);
  check_grid(grid);
  const LongMemoryModel model = LongMemoryModel::fi(d);
  const AutocovSeq acov = exact_autocov(model, grid.back());
  const std::size_t cells = grid.size() * reps;
  std::vector<double> values(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t g = cell / reps;
    const std::size_t rep = cell % reps;
    SimulationPlan plan{acov, grid[g], seed, replicate_id(g, rep), 0, SimulationMethod::AUTO};
    values[cell] = one(g, gaussian_sample(plan));
  });
  ScalingReport out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto est = mean_estimate(std::span<const double>(values).subspan(g * reps, reps));
    out.grid.push_back(static_cast<double>(grid[g]));
    out.estimate.push_back(est.mean);
    out.stderr_.push_back(est.stderr_);
  }
  out.fit = loglog_slope(out.grid, out.estimate, out.stderr_);
  return out;
}

}  // namespace

TailSum truncation_excess_detail(const LongMemoryModel& model, std::size_t k, double rel_tol) {
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const double p = model.d() - 2.0;
  for (std::size_t cutoff = initial_cutoff(k);; cutoff = std::min(4 * cutoff, kMaxCutoff)) {
    const auto a = ar_inf_coeffs(model, cutoff).values;
    const auto sigma = exact_autocov(model, cutoff).values;
    std::vector<double> terms(cutoff + 1, 0.0);
    for (std::size_t j = k + 1; j <= cutoff; ++j) {
      double inner = 0.0;
      for (std::size_t l = 1; l <= k; ++l) inner += a[l] * sigma[j - l];
      terms[j] = -a[j] * (sigma[j] + inner);
    }
    const double hi = extrapolated_sum(terms, k + 1, cutoff, p);
    const double lo = extrapolated_sum(terms, k + 1, cutoff / 2, p);
    const double err = std::abs(hi - lo);
    if (err <= rel_tol * std::abs(hi)) return {hi, err, cutoff};
    if (cutoff >= kMaxCutoff) give_up("truncation excess", err / std::abs(hi));
  }
}

double truncation_excess(const LongMemoryModel& model, std::size_t k, double rel_tol) {
  return truncation_excess_detail(model, k, rel_tol).value;
}

double ark_excess(const LongMemoryModel& model, std::size_t k) {
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const AutocovSeq acov = exact_autocov(model, k);
  const ArkModel fitted = durbin_levinson(acov, k);
  const double mse = prediction_mse(fitted.phi, acov);
  if (std::abs(mse - fitted.v) > 1e-9 * fitted.v) {
    throw InternalConsistencyError("Durbin-Levinson variance disagrees with the quadratic form");
  }
  return fitted.v - model.sigma2();
}

double c_of_d(double d) {
  if (!(d > 0.0 && d < 0.5)) throw DomainError("C(d) needs 0 < d < 1/2");
  const double lg = log_gamma(1.0 - 2.0 * d).log_abs + log_gamma(2.0 * d).log_abs -
                    2.0 * log_gamma(-d).log_abs - log_gamma(d).log_abs -
                    log_gamma(1.0 + d).log_abs;
  return std::exp(lg);
}

double c_of_d_near_half(double d) {
  if (!(d > 0.0 && d < 0.5)) throw DomainError("C(d) needs 0 < d < 1/2");
  const double g = std::tgamma(-0.5);
  return 1.0 / ((1.0 - 2.0 * d) * g * g * std::tgamma(0.5) * std::tgamma(1.5));
}

Decomposition excess_decomposition(const LongMemoryModel& model, const ArkModel& model_k,
                                   double rel_tol) {
  const std::size_t k = model_k.k;
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const auto a = ar_inf_coeffs(model, k).values;
  const AutocovSeq acov = exact_autocov(model, k);
  const auto tails = tail_inner_sums(model, k, rel_tol);

  std::vector<double> delta(k);
  for (std::size_t j = 1; j <= k; ++j) delta[j - 1] = -model_k.phi[j - 1] - a[j];

  Decomposition out;
  out.term1 = quadratic_form(covariance_matrix(acov, k), delta);
  long double t2 = 0.0L, t3 = 0.0L;
  for (std::size_t j = 1; j <= k; ++j) t2 += delta[j - 1] * tails[j].value;
  for (std::size_t j = 0; j <= k; ++j) t3 += a[j] * tails[j].value;
  out.term2 = -2.0 * static_cast<double>(t2);
  out.term3 = -static_cast<double>(t3);
  return out;
}

Decomposition excess_decomposition(double d, std::size_t k, double rel_tol) {
  return excess_decomposition(LongMemoryModel::fi(d), fi_ark_closed_form(d, k), rel_tol);
}

RatioRoutes r_of_k_routes(double d, std::size_t k) {
  const LongMemoryModel model = LongMemoryModel::fi(d);
  const Decomposition dec = excess_decomposition(d, k, kRatioTolerance);
  const double trunc = truncation_excess(model, k, kRatioTolerance);
  const double ark = ark_excess(model, k);
  return {-(dec.term1 + dec.term2) / dec.term3, (trunc - ark) / trunc};
}

double r_of_k(double d, std::size_t k) {
  const RatioRoutes r = r_of_k_routes(d, k);
  if (std::abs(r.from_decomposition - r.from_excesses) >
      kRatioAgreement * std::abs(r.from_excesses)) {
    throw InternalConsistencyError("the two computations of r(k) disagree: " +
                                   std::to_string(r.from_decomposition) + " vs " +
                                   std::to_string(r.from_excesses));
  }
  return r.from_decomposition;
}

RiskReport risk_report(const LongMemoryModel& model, std::size_t k) {
  RiskReport out{model, k, 0.0, 0.0, {}, 0.0};
  out.trunc_excess = truncation_excess(model, k);
  out.ark_excess = ark_excess(model, k);
  out.decomposition = excess_decomposition(model, durbin_levinson(exact_autocov(model, k), k));
  out.ratio = (out.trunc_excess - out.ark_excess) / out.trunc_excess;
  return out;
}

Matrix compute_H(const LongMemoryModel& model, const ArkModel& model_k) {
  const double alpha = 4.0 * model.d();
  if (!(alpha < 1.0)) throw DomainError("H needs d < 1/4 (f squared is not integrable otherwise)");
  const std::size_t k = model_k.k;
  const auto& phi = model_k.phi;
  auto h = [&](std::size_t r, double lambda) {
    double acc = std::cos(static_cast<double>(r) * lambda);
    for (std::size_t s = 1; s <= k; ++s) {
      acc -= phi[s - 1] * std::cos((static_cast<double>(r) - static_cast<double>(s)) * lambda);
    }
    return -2.0 * acc;
  };
  Matrix out(k, k);
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i; j <= k; ++j) {
      const double v = 2.0 * integrate_singular_at_zero(
                                 [&](double lambda) {
                                   const double f = spectral_density(model, lambda);
                                   return h(i, lambda) * h(j, lambda) * f * f;
                                 },
                                 alpha, std::numbers::pi, 1e-10);
      out(i - 1, j - 1) = v;
      out(j - 1, i - 1) = v;
    }
  }
  return out;
}

Matrix sandwich_H(const LongMemoryModel& model, const ArkModel& model_k, const Matrix& H) {
  const std::size_t k = model_k.k;
  const Eigen::MatrixXd sigma = to_eigen(covariance_matrix(exact_autocov(model, k), k));
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite(k);
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
  return from_eigen(inv * to_eigen(H) * inv);
}

ScalingReport coeffcov_scaling(double d, std::size_t k, const std::vector<std::size_t>& T_grid,
                               std::size_t reps, std::uint64_t seed) {
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const LongMemoryModel model = LongMemoryModel::fi(d);
  const AutocovSeq acov = exact_autocov(model, k);
  const ArkModel exact = durbin_levinson(acov, k);
  const Matrix sigma = covariance_matrix(acov, k);
  return run_scaling(d, T_grid, reps, seed, [&](std::size_t, const SamplePath& train) {
    const ArkModel fitted = durbin_levinson(empirical_autocov(train, k), k);
    std::vector<double> diff(k);
    for (std::size_t j = 0; j < k; ++j) diff[j] = fitted.phi[j] - exact.phi[j];
    return quadratic_form(sigma, diff);
  });
}

ScalingReport estimation_error_scaling(double d, std::size_t k,
                                       const std::vector<std::size_t>& T_grid, std::size_t reps,
                                       std::uint64_t seed) {
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const LongMemoryModel model = LongMemoryModel::fi(d);
  const Matrix sigma = covariance_matrix(exact_autocov(model, k), k);
  const auto a = ar_inf_coeffs(model, k).values;
  return run_scaling(d, T_grid, reps, seed, [&](std::size_t, const SamplePath& train) {
    const WhittleFit fit = whittle_fit(train);
    const auto a_hat = ar_inf_coeffs(LongMemoryModel::fi(fit.d_hat), k).values;
    std::vector<double> diff(k);
    for (std::size_t j = 1; j <= k; ++j) diff[j - 1] = a_hat[j] - a[j];
    return quadratic_form(sigma, diff);
  });
}

ScalingReport covmoment_scaling(double d, const std::vector<std::size_t>& n_grid,
                                std::size_t reps, std::uint64_t seed) {
  const double sigma0 = exact_autocov(LongMemoryModel::fi(d), 0)[0];
  return run_scaling(d, n_grid, reps, seed, [&](std::size_t, const SamplePath& path) {
    const double err = empirical_autocov(path, 0)[0] - sigma0;
    return err * err;
  });
}

HCheck h_matrix_mc(double d, std::size_t k, std::size_t T, std::size_t reps, std::uint64_t seed) {
  check_replicates(reps);
  if (k == 0) throw ArgumentError("order k must be at least 1");
  const LongMemoryModel model = LongMemoryModel::fi(d);
  const AutocovSeq acov = exact_autocov(model, T);
  const ArkModel exact = durbin_levinson(acov, k);

  HCheck out;
  out.H = compute_H(model, exact);
  out.sandwich = sandwich_H(model, exact, out.H);

  std::vector<double> phis(reps * k);
  parallel_for(reps, [&](std::size_t rep) {
    SimulationPlan plan{acov, T, seed, replicate_id(0, rep), 0, SimulationMethod::AUTO};
    const ArkModel fitted = durbin_levinson(empirical_autocov(gaussian_sample(plan), k), k);
    std::copy(fitted.phi.begin(), fitted.phi.end(), phis.begin() + static_cast<std::ptrdiff_t>(rep * k));
  });

  std::vector<double> mean(k), column(reps);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = phis[r * k + i];
    mean[i] = pairwise_sum(column) / static_cast<double>(reps);
  }
  out.scaled_cov = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < reps; ++r) {
        column[r] = (phis[r * k + i] - mean[i]) * (phis[r * k + j] - mean[j]);
      }
      out.scaled_cov(i, j) =
          static_cast<double>(T) * pairwise_sum(column) / static_cast<double>(reps - 1);
    }
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < k * k; ++i) {
    num += out.scaled_cov.data[i] * out.sandwich.data[i];
    den += out.sandwich.data[i] * out.sandwich.data[i];
  }
  out.c_fit = num / den;
  out.better_c =
      std::abs(std::log(out.c_fit / 2.0)) <= std::abs(std::log(out.c_fit / 4.0)) ? 2.0 : 4.0;
  return out;
}

}  // namespace longmem
