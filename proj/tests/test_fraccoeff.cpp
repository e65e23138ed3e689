#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "longmem/errors.hpp"
#include "longmem/fraccoeff.hpp"
#include "longmem/quadrature.hpp"

using namespace longmem;

namespace {

// Random FARIMA(p, d, q) with p, q <= 2. Coefficients with Σ|c| < 1 keep the
// polynomials zero-free on the closed unit disk.
LongMemoryModel random_model(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dd(0.02, 0.48), coef(-0.45, 0.45);
  std::uniform_int_distribution<int> order(0, 2);
  std::vector<double> ar(order(gen)), ma(order(gen));
  for (double& c : ar) c = coef(gen);
  for (double& c : ma) c = coef(gen);
  return LongMemoryModel::farima(dd(gen), ar, ma, 0.5 + coef(gen) + 0.45);
}

double max_convolution_defect(const LongMemoryModel& m, std::size_t n) {
  const CoeffSeq a = ar_inf_coeffs(m, n), b = ma_inf_coeffs(m, n);
  double worst = std::abs(a[0] * b[0] - 1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

// σ(k) = 2∫_0^π f(λ) cos(kλ) dλ.
double acov_by_quadrature(const LongMemoryModel& m, int k) {
  return 2.0 * integrate_singular_at_zero(
                   [&](double x) { return spectral_density(m, x) * std::cos(k * x); }, 2.0 * m.d(),
                   std::numbers::pi);
}

}  // namespace

TEST_CASE("AR(inf) coefficients") {
  CHECK(ar_inf_coeffs(LongMemoryModel::fi(0.3), 0).values == std::vector<double>{1.0});
  const double d = 0.4;
  const double a1 = std::tgamma(1 - d) / (std::tgamma(2.0) * std::tgamma(-d));
  CHECK(ar_inf_coeffs(LongMemoryModel::fi(d), 1)[1] == doctest::Approx(a1).epsilon(1e-14));
  CHECK(a1 == doctest::Approx(-0.4).epsilon(1e-14));

  const double a2 = std::tgamma(2 - 0.25) / (std::tgamma(3.0) * std::tgamma(-0.25));
  CHECK(ar_inf_coeffs(LongMemoryModel::fi(0.25), 2)[2] == doctest::Approx(-0.09375).epsilon(1e-14));
  CHECK(a2 == doctest::Approx(-0.09375).epsilon(1e-13));

  // Near-AR(1): a_1 = −(φ₁ + d), so the AR(1) value −φ₁ is reached as d → 0.
  const auto near_ar1 = LongMemoryModel::farima(kMinMemory, {0.5}, {});
  const CoeffSeq a = ar_inf_coeffs(near_ar1, 3);
  CHECK(a[1] == doctest::Approx(-0.5 - kMinMemory).epsilon(1e-14));
  CHECK(std::abs(a[1] + 0.5) <= kMinMemory * (1 + 1e-12));
  CHECK(a.convention == CoeffConvention::AR_INF);
}

TEST_CASE("MA(inf) coefficients") {
  CHECK(ma_inf_coeffs(LongMemoryModel::fi(0.3), 0).values == std::vector<double>{1.0});
  const double d = 0.3;
  const double b1 = std::tgamma(1 + d) / (std::tgamma(2.0) * std::tgamma(d));
  CHECK(ma_inf_coeffs(LongMemoryModel::fi(d), 1)[1] == doctest::Approx(b1).epsilon(1e-14));
  CHECK(b1 == doctest::Approx(0.3).epsilon(1e-14));
  // b_j = Γ(j + d)/(Γ(j + 1)Γ(d)) at a moderate j
  const CoeffSeq b = ma_inf_coeffs(LongMemoryModel::fi(d), 40);
  CHECK(b[40] == doctest::Approx(std::tgamma(40 + d) / (std::tgamma(41.0) * std::tgamma(d))).epsilon(1e-12));
}

TEST_CASE("FI sign pattern") {
  for (double d : {0.05, 0.3, 0.49}) {
    const auto m = LongMemoryModel::fi(d);
    const CoeffSeq a = ar_inf_coeffs(m, 500), b = ma_inf_coeffs(m, 500);
    for (std::size_t j = 1; j <= 500; ++j) {
      REQUIRE(a[j] < 0.0);
      REQUIRE(b[j] > 0.0);
    }
  }
}

TEST_CASE("AR(inf) and MA(inf) expansions are inverse to each other") {
  CHECK(max_convolution_defect(LongMemoryModel::fi(0.3), 50) <= 1e-12);
  CHECK(max_convolution_defect(LongMemoryModel::farima(0.2, {0.4, -0.3}, {0.5}), 50) <= 1e-12);
  std::mt19937_64 gen(20241017);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_model(gen);
    CAPTURE(m.d());
    CHECK(max_convolution_defect(m, 200) <= 1e-10);
  }
}

TEST_CASE("decay envelopes at j = 1e4") {
  const std::size_t j = 10000;
  const double jj = static_cast<double>(j);
  for (double d : {0.1, 0.25, 0.4}) {
    CAPTURE(d);
    const auto m = LongMemoryModel::fi(d);
    const CoeffSeq a = ar_inf_coeffs(m, j), b = ma_inf_coeffs(m, j);
    const AutocovSeq s = exact_autocov(m, j);
    CHECK(std::pow(jj, d + 1) * std::abs(a[j]) == doctest::Approx(1 / std::abs(std::tgamma(-d))).epsilon(0.01));
    CHECK(std::pow(jj, 1 - d) * b[j] == doctest::Approx(1 / std::tgamma(d)).epsilon(0.01));
    CHECK(std::pow(jj, 1 - 2 * d) * s[j] ==
          doctest::Approx(std::tgamma(1 - 2 * d) / (std::tgamma(d) * std::tgamma(1 - d))).epsilon(0.01));

    // bounds |a_j| <= C j^{-d-1+δ}, |b_j| <= C j^{d-1+δ} with δ = 0.01
    const double delta = 0.01;
    double ca = 0.0, cb = 0.0, ca_tail = 0.0, cb_tail = 0.0;
    for (std::size_t i = 1; i <= j; ++i) {
      const double x = static_cast<double>(i);
      const double ra = std::pow(x, d + 1 - delta) * std::abs(a[i]);
      const double rb = std::pow(x, 1 - d - delta) * b[i];
      if (i <= 100) {
        ca = std::max(ca, ra);
        cb = std::max(cb, rb);
      } else {
        ca_tail = std::max(ca_tail, ra);
        cb_tail = std::max(cb_tail, rb);
      }
    }
    CHECK(ca_tail <= 2 * ca);
    CHECK(cb_tail <= 2 * cb);
  }
}

TEST_CASE("exact autocovariance") {
  const auto m = LongMemoryModel::fi(0.25);
  const AutocovSeq s = exact_autocov(m, 1);
  CHECK(s.source == AutocovSource::EXACT);
  CHECK(s[1] / s[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const double oracle = std::tgamma(0.5) / std::pow(std::tgamma(0.75), 2);
  CHECK(s[0] == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(s[0] == doctest::Approx(1.18034).epsilon(1e-5));

  const AutocovSeq t = exact_autocov(LongMemoryModel::fi(0.3), 200);
  for (std::size_t j = 1; j <= 200; ++j) {
    REQUIRE(t[j] > 0.0);
    REQUIRE(t[j] < t[j - 1]);
  }

  const AutocovSeq f = exact_autocov(LongMemoryModel::farima(0.3, {}, {}), 200);
  for (std::size_t j = 0; j <= 200; ++j) REQUIRE(f[j] == doctest::Approx(t[j]).epsilon(1e-8));

  // σ_ε² enters linearly
  const AutocovSeq u = exact_autocov(LongMemoryModel::fi(0.3, 2.5), 10);
  for (std::size_t j = 0; j <= 10; ++j) CHECK(u[j] == doctest::Approx(2.5 * t[j]).epsilon(1e-14));
}

TEST_CASE("autocovariance is bounded by the variance") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_model(gen);
    const AutocovSeq s = exact_autocov(m, 300);
    REQUIRE(s[0] > 0.0);
    for (std::size_t j = 1; j <= 300; ++j) REQUIRE(std::abs(s[j]) <= s[0]);
  }
}

TEST_CASE("spectral density") {
  const auto m = LongMemoryModel::fi(0.3);
  CHECK(spectral_density(m, std::numbers::pi) ==
        doctest::Approx(std::pow(2.0, -0.6) / (2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(spectral_density(m, std::numbers::pi) == doctest::Approx(0.10498).epsilon(1e-4));
  CHECK(spectral_density(m, -1.0) == spectral_density(m, 1.0));
  const auto wn = LongMemoryModel::fi(kMinMemory, 3.0);
  for (double x : {0.1, 1.0, 3.0}) CHECK(spectral_density(wn, x) == doctest::Approx(3.0 / (2 * std::numbers::pi)).epsilon(1e-3));
  CHECK_THROWS_AS(spectral_density(m, 0.0), SingularityError);
  CHECK_THROWS_AS(spectral_density(m, 4.0), DomainError);

  // ARMA factor evaluated by hand: |1 + 0.5e^{-iλ}|² / |1 − 0.4e^{-iλ}|²
  const auto fm = LongMemoryModel::farima(0.2, {0.4}, {0.5});
  const double x = 0.7;
  const double num = 1 + 0.25 + 2 * 0.5 * std::cos(x), den = 1 + 0.16 - 2 * 0.4 * std::cos(x);
  CHECK(arma_transfer(fm, x) == doctest::Approx(num / den).epsilon(1e-14));
}

TEST_CASE("spectral density and autocovariance are Fourier pairs") {
  for (double d : {0.05, 0.25, 0.45}) {
    const auto m = LongMemoryModel::fi(d);
    CHECK(acov_by_quadrature(m, 0) == doctest::Approx(exact_autocov(m, 0)[0]).epsilon(1e-5));
  }
  // Independent check of the FARIMA filtering route, lag by lag.
  const std::vector<LongMemoryModel> models{LongMemoryModel::farima(0.2, {0.4}, {0.5}),
                                            LongMemoryModel::farima(0.35, {0.6, -0.2}, {-0.3, 0.2}, 2.0),
                                            LongMemoryModel::farima(0.1, {}, {0.8})};
  for (const auto& m : models) {
    const AutocovSeq s = exact_autocov(m, 6);
    for (int k = 0; k <= 6; ++k) {
      CAPTURE(k);
      CHECK(s[static_cast<std::size_t>(k)] == doctest::Approx(acov_by_quadrature(m, k)).epsilon(1e-7).scale(s[0]));
    }
  }
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS_AS(LongMemoryModel::fi(0.0), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::fi(0.5), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::fi(-0.1), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::fi(0.3, 0.0), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::fi(0.3, -1.0), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::fi(std::nan("")), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::farima(0.3, {1.5}, {}), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::farima(0.3, {}, {1.0}), DomainError);
  CHECK_THROWS_AS(LongMemoryModel::farima(0.3, {0.5, 0.5}, {}), DomainError);
  CHECK_NOTHROW(LongMemoryModel::farima(0.3, {0.5, 0.3}, {0.9}));
}
