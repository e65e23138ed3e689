#include "longmem/fraccoeff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/special.hpp"

namespace longmem {

namespace {

constexpr double kRootMargin = 1e-10;

std::vector<double> trim_trailing_zeros(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

void check_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " contains a non-finite value");
  }
}

// 1 − φ₁z − … as 1 + c₁z + …
std::vector<double> ar_tail(const LongMemoryModel& m) {
  std::vector<double> c(m.ar().size());
  std::transform(m.ar().begin(), m.ar().end(), c.begin(), [](double v) { return -v; });
  return c;
}

std::vector<double> fi_ar_recursion(double d, std::size_t n) {
  // Extended precision keeps the accumulated recursion error negligible at j ~ 1e6.
  std::vector<double> a(n + 1);
  long double cur = 1.0L;
  a[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cur *= (static_cast<long double>(j) - d) / static_cast<long double>(j + 1);
    a[j + 1] = static_cast<double>(cur);
  }
  return a;
}

std::vector<double> fi_ma_recursion(double d, std::size_t n) {
  std::vector<double> b(n + 1);
  long double cur = 1.0L;
  b[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cur *= (static_cast<long double>(j) + d) / static_cast<long double>(j + 1);
    b[j + 1] = static_cast<double>(cur);
  }
  return b;
}

// Multiply a power series (truncated to its own length) by 1 + c₁z + … + c_p z^p.
std::vector<double> times_poly(const std::vector<double>& s, std::span<const double> c) {
  std::vector<double> out(s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::size_t i = 1; i <= c.size() && i <= j; ++i) out[j] += c[i - 1] * s[j - i];
  }
  return out;
}

// Divide a power series by 1 + c₁z + … + c_p z^p.
std::vector<double> over_poly(const std::vector<double>& s, std::span<const double> c) {
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    double v = s[j];
    for (std::size_t i = 1; i <= c.size() && i <= j; ++i) v -= c[i - 1] * out[j - i];
    out[j] = v;
  }
  return out;
}

bool flush_subnormals(std::vector<double>& v) {
  bool flushed = false;
  for (double& x : v) {
    if (x != 0.0 && std::abs(x) < std::numeric_limits<double>::min()) {
      x = 0.0;
      flushed = true;
    }
  }
  return flushed;
}

std::vector<double> fi_exact_autocov(double d, double sigma2, std::size_t m) {
  std::vector<double> s(m + 1);
  const SignedLog num = log_gamma(1.0 - 2.0 * d);
  const SignedLog den = log_gamma(1.0 - d);
  long double cur = sigma2 * std::exp(num.log_abs - 2.0 * den.log_abs);
  s[0] = static_cast<double>(cur);
  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<long double>(j);
    cur *= (jj + d) / (jj + 1.0L - d);
    s[j + 1] = static_cast<double>(cur);
  }
  return s;
}

// MA weights of θ(z)/φ(z), truncated where the geometric envelope set by the
// smallest AR root modulus falls below 1e-18.
std::vector<double> arma_psi_weights(const LongMemoryModel& model) {
  const auto phi = ar_tail(model);
  const std::size_t p = phi.size();
  const std::size_t q = model.ma().size();
  std::size_t len = q + 1;
  if (p > 0) {
    const double r = min_root_modulus(phi);
    const double decay = std::log(r);
    const auto extra = static_cast<std::size_t>(std::ceil(std::log(1e18) / decay));
    len = std::min<std::size_t>(p + q + 32 + 2 * extra, 2'000'000);
  }
  std::vector<double> seed(len, 0.0);
  seed[0] = 1.0;
  for (std::size_t i = 0; i < q && i + 1 < len; ++i) seed[i + 1] = model.ma()[i];
  return over_poly(seed, phi);
}

}  // namespace

void check_memory_parameter(double d) {
  if (!(d >= kMinMemory && d <= kMaxMemory)) {
    throw DomainError("memory parameter d must lie in [1e-4, 0.5 - 1e-4], got " +
                      std::to_string(d));
  }
}

double min_root_modulus(std::span<const double> tail_coefficients) {
  const std::vector<double> c =
      trim_trailing_zeros({tail_coefficients.begin(), tail_coefficients.end()});
  const std::size_t p = c.size();
  if (p == 0) return std::numeric_limits<double>::infinity();
  // Companion matrix of the monic polynomial z^p + (c_{p-1}/c_p) z^{p-1} + … + 1/c_p.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                    static_cast<Eigen::Index>(p));
  for (std::size_t i = 1; i < p; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  const double lead = c[p - 1];
  for (std::size_t i = 0; i < p; ++i) {
    const double coeff = (i == 0) ? 1.0 : c[i - 1];
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p - 1)) = -coeff / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  double out = std::numeric_limits<double>::infinity();
  for (const auto& root : solver.eigenvalues()) out = std::min(out, std::abs(root));
  return out;
}

LongMemoryModel::LongMemoryModel(ModelKind kind, double d, std::vector<double> ar,
                                 std::vector<double> ma, double sigma2)
    : kind_(kind), d_(d), ar_(std::move(ar)), ma_(std::move(ma)), sigma2_(sigma2) {
  check_memory_parameter(d_);
  if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_)) {
    throw DomainError("innovation variance must be positive and finite");
  }
  check_finite(ar_, "AR polynomial");
  check_finite(ma_, "MA polynomial");
  ar_ = trim_trailing_zeros(std::move(ar_));
  ma_ = trim_trailing_zeros(std::move(ma_));
  if (min_root_modulus(ar_tail(*this)) <= 1.0 + kRootMargin) {
    throw DomainError("AR polynomial has a zero on the closed unit disk");
  }
  if (min_root_modulus(ma_) <= 1.0 + kRootMargin) {
    throw DomainError("MA polynomial has a zero on the closed unit disk");
  }
}

LongMemoryModel LongMemoryModel::fi(double d, double sigma2) {
  return LongMemoryModel(ModelKind::FI, d, {}, {}, sigma2);
}

LongMemoryModel LongMemoryModel::farima(double d, std::vector<double> ar, std::vector<double> ma,
                                        double sigma2) {
  return LongMemoryModel(ModelKind::FARIMA, d, std::move(ar), std::move(ma), sigma2);
}

LongMemoryModel LongMemoryModel::with_d(double d) const {
  return LongMemoryModel(kind_, d, ar_, ma_, sigma2_);
}

LongMemoryModel LongMemoryModel::with_sigma2(double sigma2) const {
  return LongMemoryModel(kind_, d_, ar_, ma_, sigma2);
}

CoeffSeq ar_inf_coeffs(const LongMemoryModel& model, std::size_t n) {
  std::vector<double> a = fi_ar_recursion(model.d(), n);
  if (!model.is_pure_fi()) a = over_poly(times_poly(a, ar_tail(model)), model.ma());
  CoeffSeq out{CoeffConvention::AR_INF, std::move(a), model};
  out.underflow = flush_subnormals(out.values);
  return out;
}

CoeffSeq ma_inf_coeffs(const LongMemoryModel& model, std::size_t n) {
  std::vector<double> b = fi_ma_recursion(model.d(), n);
  if (!model.is_pure_fi()) b = over_poly(times_poly(b, model.ma()), ar_tail(model));
  CoeffSeq out{CoeffConvention::MA_INF, std::move(b), model};
  out.underflow = flush_subnormals(out.values);
  return out;
}

AutocovSeq exact_autocov(const LongMemoryModel& model, std::size_t m) {
  if (model.is_pure_fi()) {
    return {fi_exact_autocov(model.d(), model.sigma2(), m), AutocovSource::EXACT, model};
  }
  const std::vector<double> psi = arma_psi_weights(model);
  const std::size_t len = psi.size();
  std::vector<double> g(len, 0.0);
  for (std::size_t lag = 0; lag < len; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < len; ++i) acc += psi[i] * psi[i + lag];
    g[lag] = acc;
  }
  const std::vector<double> fi = fi_exact_autocov(model.d(), model.sigma2(), m + len);
  std::vector<double> s(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    double acc = g[0] * fi[k];
    for (std::size_t lag = 1; lag < len; ++lag) {
      const std::size_t back = k >= lag ? k - lag : lag - k;
      acc += g[lag] * (fi[k + lag] + fi[back]);
    }
    s[k] = acc;
  }
  return {std::move(s), AutocovSource::EXACT, model};
}

double arma_transfer(const LongMemoryModel& model, double lambda) {
  if (model.is_pure_fi()) return 1.0;
  const std::complex<double> z = std::polar(1.0, -lambda);
  std::complex<double> theta = 1.0, phi = 1.0, zp = 1.0;
  const std::size_t deg = std::max(model.ar().size(), model.ma().size());
  for (std::size_t i = 0; i < deg; ++i) {
    zp *= z;
    if (i < model.ma().size()) theta += model.ma()[i] * zp;
    if (i < model.ar().size()) phi -= model.ar()[i] * zp;
  }
  return std::norm(theta) / std::norm(phi);
}

double spectral_density(const LongMemoryModel& model, double lambda) {
  if (lambda == 0.0) throw SingularityError("spectral density diverges at frequency 0");
  if (!(std::abs(lambda) <= std::numbers::pi)) {
    throw DomainError("frequency must lie in [-pi, pi]");
  }
  const double base = 2.0 * std::sin(std::abs(lambda) / 2.0);
  return model.sigma2() / (2.0 * std::numbers::pi) * std::pow(base, -2.0 * model.d()) *
         arma_transfer(model, lambda);
}

}  // namespace longmem
