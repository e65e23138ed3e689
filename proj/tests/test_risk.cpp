#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include <Eigen/Dense>

#include "longmem/errors.hpp"
#include "longmem/risk.hpp"

using namespace longmem;

namespace {

// −Σ_{j>k} a_j Σ_{l=0}^{k} a_l σ(j − l), summed directly to J with a
// power-law remainder s_j ≈ s_J (j/J)^{d−2}.
double brute_truncation_excess(const LongMemoryModel& m, std::size_t k, std::size_t J) {
  const CoeffSeq a = ar_inf_coeffs(m, J);
  const AutocovSeq s = exact_autocov(m, J);
  long double total = 0.0L, last = 0.0L;
  for (std::size_t j = k + 1; j <= J; ++j) {
    long double inner = 0.0L;
    for (std::size_t l = 0; l <= k; ++l) inner += static_cast<long double>(a[l]) * s[j - l];
    last = -static_cast<long double>(a[j]) * inner;
    total += last;
  }
  const double p = m.d() - 2.0;
  const double x = static_cast<double>(J);
  const double tail = static_cast<double>(last) * std::pow(x, -p) * std::pow(x + 0.5, p + 1) / -(p + 1);
  return static_cast<double>(total) + tail;
}

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

}  // namespace

TEST_CASE("truncation excess against direct summation") {
  for (const auto& m : {LongMemoryModel::fi(0.1), LongMemoryModel::fi(0.3), LongMemoryModel::fi(0.45, 2.0),
                        LongMemoryModel::farima(0.25, {0.3}, {0.4})}) {
    for (std::size_t k : {1, 10, 40}) {
      CAPTURE(m.d());
      CAPTURE(k);
      const double oracle = brute_truncation_excess(m, k, 1 << 20);
      CHECK(rel(truncation_excess(m, k), oracle) <= 1e-6);
    }
  }
  const TailSum t = truncation_excess_detail(LongMemoryModel::fi(0.3), 50);
  CHECK(t.error <= 1e-6 * t.value);
  CHECK(t.cutoff >= 4096);
}

TEST_CASE("truncation excess: positivity, monotonicity in d, rate") {
  CHECK(truncation_excess(LongMemoryModel::fi(0.45), 100) > truncation_excess(LongMemoryModel::fi(0.1), 100));
  CHECK(truncation_excess(LongMemoryModel::farima(0.2, {-0.5}, {0.3}), 20) > 0.0);
  CHECK(truncation_excess(LongMemoryModel::fi(kMinMemory), 5) > 0.0);

  // k·trunc(k) approaches 2C(d)σ² from below, with shrinking error
  for (double d : {0.1, 0.25, 0.4}) {
    const double sigma2 = 1.5;
    const double target = 2 * c_of_d(d) * sigma2;
    double previous = INFINITY;
    for (std::size_t k : {100, 200, 400, 800, 1600}) {
      const double scaled = static_cast<double>(k) * truncation_excess(LongMemoryModel::fi(d, sigma2), k);
      const double err = std::abs(scaled - target);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous <= 1e-3 * target);
  }
}

TEST_CASE("AR(k) excess") {
  CHECK(ark_excess(LongMemoryModel::fi(kMinMemory), 10) <= 1e-3);
  CHECK(ark_excess(LongMemoryModel::fi(kMinMemory), 10) >= 0.0);
  const auto m = LongMemoryModel::fi(0.3);
  CHECK(ark_excess(m, 50) <= truncation_excess(m, 50));
  CHECK(ark_excess(m, 50) == doctest::Approx(durbin_levinson(exact_autocov(m, 50), 50).v - 1.0));

  for (double d : {0.05, 0.2, 0.3, 0.45}) {
    for (std::size_t k : {1, 5, 25, 100, 400}) {
      const auto model = LongMemoryModel::fi(d);
      CHECK(ark_excess(model, k) <= truncation_excess(model, k));
    }
  }
  // k·ark(k) increases towards its limit with shrinking increments
  double prev_value = 0.0, prev_step = INFINITY;
  for (std::size_t k : {100, 200, 400, 800}) {
    const double v = static_cast<double>(k) * ark_excess(m, k);
    CHECK(v > prev_value);
    if (prev_value > 0.0) {
      CHECK(v - prev_value < prev_step);
      prev_step = v - prev_value;
    }
    prev_value = v;
  }
  CHECK(prev_value < 2 * c_of_d(0.3));
}

TEST_CASE("C(d)") {
  const double d = 0.25;
  const double oracle = std::tgamma(1 - 2 * d) * std::tgamma(2 * d) /
                        (std::pow(std::tgamma(-d), 2) * std::tgamma(d) * std::tgamma(1 + d));
  CHECK(std::abs(c_of_d(d) - oracle) <= 1e-10);
  CHECK(c_of_d(d) == doctest::Approx(0.039788).epsilon(1e-5));
  for (double x : {0.05, 0.17, 0.33, 0.45}) {
    const double o = std::tgamma(1 - 2 * x) * std::tgamma(2 * x) /
                     (std::pow(std::tgamma(-x), 2) * std::tgamma(x) * std::tgamma(1 + x));
    CHECK(rel(c_of_d(x), o) <= 1e-12);
  }
  // small-d behaviour: Γ(1−2d)Γ(2d) ≈ 1/(2d), Γ(−d)² ≈ d^{-2}, Γ(d) ≈ 1/d, so C(d) ≈ d²/2
  for (double x : {1e-3, 1e-4}) CHECK(c_of_d(x) / (x * x) == doctest::Approx(0.5).epsilon(2 * x));
  CHECK(rel(c_of_d(0.49), c_of_d_near_half(0.49)) <= 0.10);
  CHECK(rel(c_of_d(0.4999), c_of_d_near_half(0.4999)) <= 1e-3);
  double prev = 0.0;
  for (int i = 1; i <= 49; ++i) {
    const double c = c_of_d(0.01 * i);
    CHECK(c > prev);
    prev = c;
  }
  CHECK_THROWS_AS(c_of_d(0.5), DomainError);
  CHECK_THROWS_AS(c_of_d(0.0), DomainError);
}

TEST_CASE("ratio r(k)") {
  CHECK(r_of_k(0.05, 10) < 0.5);
  for (double d : {0.1, 0.25, 0.4}) {
    for (std::size_t k : {10, 50, 200}) {
      const RatioRoutes routes = r_of_k_routes(d, k);
      CHECK(rel(routes.from_decomposition, routes.from_excesses) <= 1e-6);
      CHECK(routes.from_excesses >= 0.0);
      CHECK(routes.from_excesses < 1.0);
    }
  }
  for (std::size_t k : {20, 60}) {
    double prev = 0.0;
    for (double d : {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
      const double r = r_of_k(d, k);
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("excess decomposition") {
  const double d = 0.3;
  const std::size_t k = 50;
  const auto m = LongMemoryModel::fi(d);
  const Decomposition dec = excess_decomposition(d, k);
  const double ark = ark_excess(m, k), trunc = truncation_excess(m, k);
  CHECK(rel(dec.sum(), ark) <= 1e-8);
  CHECK(rel(std::abs(dec.term3), trunc) <= 1e-8);
  CHECK(dec.term1 > 0.0);
  const Decomposition lit = dec.literal();
  CHECK(lit.term1 < 0.0);
  CHECK(lit.term2 > 0.0);
  CHECK(lit.term3 < 0.0);
  CHECK(lit.sum() == doctest::Approx(-ark).epsilon(1e-8));

  const auto fm = LongMemoryModel::farima(0.2, {0.5}, {-0.3});
  for (std::size_t kk : {3, 30}) {
    const ArkModel mk = durbin_levinson(exact_autocov(fm, kk), kk);
    const Decomposition g = excess_decomposition(fm, mk);
    CHECK(rel(g.sum(), ark_excess(fm, kk)) <= 1e-8);
    CHECK(rel(std::abs(g.term3), truncation_excess(fm, kk)) <= 1e-8);
  }

  const RiskReport rep = risk_report(m, k);
  CHECK(rep.k == k);
  CHECK(rep.ark_excess <= rep.trunc_excess);
  CHECK(rep.ratio == doctest::Approx((rep.trunc_excess - rep.ark_excess) / rep.trunc_excess));
  CHECK(rep.ratio >= 0.0);
  CHECK(rep.ratio < 1.0);
}

TEST_CASE("H matrix") {
  const double d = 0.1;
  const auto m = LongMemoryModel::fi(d);
  for (std::size_t k : {1, 2, 4}) {
    const ArkModel mk = durbin_levinson(exact_autocov(m, k), k);
    const Matrix H = compute_H(m, mk);
    REQUIRE(H.rows == k);
    Eigen::MatrixXd E(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(std::abs(H(i, j) - H(j, i)) <= 1e-12 * std::abs(H(i, i)));
        E(i, j) = H(i, j);
      }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);

    // independent quadrature with double-exponential nodes
    boost::math::quadrature::tanh_sinh<double> ts;
    auto h = [&](std::size_t r, double x) {
      double s = std::cos(static_cast<double>(r) * x);
      for (std::size_t q = 1; q <= k; ++q) s -= mk.phi[q - 1] * std::cos((static_cast<double>(r) - q) * x);
      return -2.0 * s;
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const double v = 2.0 * ts.integrate(
                                   [&](double x) {
                                     const double f = spectral_density(m, x);
                                     return h(i + 1, x) * h(j + 1, x) * f * f;
                                   },
                                   0.0, std::numbers::pi);
        CHECK(H(i, j) == doctest::Approx(v).epsilon(1e-8).scale(std::abs(H(i, i))));
      }
  }
  const ArkModel m3 = durbin_levinson(exact_autocov(LongMemoryModel::fi(0.25), 2), 2);
  CHECK_THROWS_AS(compute_H(LongMemoryModel::fi(0.25), m3), DomainError);
  CHECK_THROWS_AS(compute_H(LongMemoryModel::fi(0.3), m3), DomainError);
}

TEST_CASE("Monte Carlo experiments refuse underpowered requests") {
  CHECK_THROWS_AS(coeffcov_scaling(0.1, 2, {256, 512}, 49, 1), StatisticalPowerError);
  CHECK_THROWS_AS(covmoment_scaling(0.1, {256, 512}, 10, 1), StatisticalPowerError);
  CHECK_THROWS_AS(estimation_error_scaling(0.1, 2, {256, 512}, 0, 1), StatisticalPowerError);
  CHECK_THROWS_AS(covmoment_scaling(0.1, {512, 256}, 60, 1), ArgumentError);
  CHECK_THROWS_AS(h_matrix_mc(0.1, 2, 256, 20, 1), StatisticalPowerError);
}

TEST_CASE("Monte Carlo experiments do not depend on the thread count") {
  auto run_all = [] {
    std::vector<double> out;
    for (const auto& r : {coeffcov_scaling(0.2, 3, {128, 256}, 60, 5), estimation_error_scaling(0.2, 3, {128, 256}, 60, 5),
                          covmoment_scaling(0.2, {128, 256}, 60, 5)}) {
      out.insert(out.end(), r.estimate.begin(), r.estimate.end());
      out.insert(out.end(), r.stderr_.begin(), r.stderr_.end());
      out.push_back(r.fit.slope);
    }
    const HCheck h = h_matrix_mc(0.1, 2, 256, 60, 5);
    out.insert(out.end(), h.scaled_cov.data.begin(), h.scaled_cov.data.end());
    out.push_back(h.c_fit);
    return out;
  };
  setenv("LONGMEM_THREADS", "1", 1);
  const auto a = run_all();
  setenv("LONGMEM_THREADS", "5", 1);
  const auto b = run_all();
  const auto c = run_all();
  unsetenv("LONGMEM_THREADS");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::memcmp(&a[i], &b[i], sizeof(double)) == 0);
    CHECK(std::memcmp(&b[i], &c[i], sizeof(double)) == 0);
  }
}

TEST_CASE("coefficient covariance scaling at small d") {
  const ScalingReport r = coeffcov_scaling(0.1, 4, {512, 1024, 2048}, 100, 31);
  CHECK(r.grid.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.stderr_[i] > 0.0);
  CHECK(std::abs(r.fit.slope + 1.0) <= 0.4);
}
