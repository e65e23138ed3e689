#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace longmem {

/// Admissible range for the memory parameter. The endpoints 0 and 1/2 are
/// excluded because the coefficient formulas degenerate there.
inline constexpr double kMinMemory = 1e-4;
inline constexpr double kMaxMemory = 0.5 - 1e-4;

enum class ModelKind { FI, FARIMA };

/// φ(B)(1 − B)^d X_n = θ(B) ε_n with Var ε = sigma2.
///
/// Polynomial conventions: φ(z) = 1 − φ₁z − … − φ_p z^p and
/// θ(z) = 1 + θ₁z + … + θ_q z^q. Both must be zero-free on the closed unit
/// disk; this is checked at construction from the companion-matrix roots.
/// FI(d) is FARIMA(0, d, 0).
class LongMemoryModel {
 public:
  static LongMemoryModel fi(double d, double sigma2 = 1.0);
  static LongMemoryModel farima(double d, std::vector<double> ar, std::vector<double> ma,
                                double sigma2 = 1.0);

  ModelKind kind() const noexcept { return kind_; }
  double d() const noexcept { return d_; }
  const std::vector<double>& ar() const noexcept { return ar_; }
  const std::vector<double>& ma() const noexcept { return ma_; }
  double sigma2() const noexcept { return sigma2_; }

  /// True when there is no ARMA factor, whatever the declared kind.
  bool is_pure_fi() const noexcept { return ar_.empty() && ma_.empty(); }

  /// Same model with a different memory parameter or innovation variance.
  LongMemoryModel with_d(double d) const;
  LongMemoryModel with_sigma2(double sigma2) const;

  friend bool operator==(const LongMemoryModel&, const LongMemoryModel&) = default;

 private:
  LongMemoryModel(ModelKind kind, double d, std::vector<double> ar, std::vector<double> ma,
                  double sigma2);

  ModelKind kind_;
  double d_;
  std::vector<double> ar_;
  std::vector<double> ma_;
  double sigma2_;
};

/// Throws DomainError unless d lies in [kMinMemory, kMaxMemory].
void check_memory_parameter(double d);

/// Smallest root modulus of 1 + c₁z + … + c_p z^p (infinity for p = 0).
double min_root_modulus(std::span<const double> tail_coefficients);

enum class CoeffConvention {
  AR_INF,  ///< ε_n = Σ a_j X_{n−j}, a_0 = 1
  MA_INF,  ///< X_n = Σ b_j ε_{n−j}, b_0 = 1
};

/// Prefix values[0..n] of an AR(∞) or MA(∞) expansion.
struct CoeffSeq {
  CoeffConvention convention;
  std::vector<double> values;
  LongMemoryModel model;
  /// Set when subnormal values were flushed to zero.
  bool underflow = false;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }
};

enum class AutocovSource { EXACT, EMPIRICAL };

/// σ(0..m). Negative lags are read through `at`.
struct AutocovSeq {
  std::vector<double> values;
  AutocovSource source = AutocovSource::EXACT;
  std::optional<LongMemoryModel> model;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t lag) const { return values[lag]; }
  double at(long long lag) const { return values[static_cast<std::size_t>(lag < 0 ? -lag : lag)]; }
};

/// a_0..a_n of A(z) = φ(z)(1 − z)^d / θ(z).
///
/// FI uses the ratio recursion a_{j+1} = a_j (j − d)/(j + 1); FARIMA convolves
/// that expansion with φ and divides by θ as a power series.
CoeffSeq ar_inf_coeffs(const LongMemoryModel& model, std::size_t n);

/// b_0..b_n of B(z) = θ(z)(1 − z)^{−d} / φ(z) = 1 / A(z).
CoeffSeq ma_inf_coeffs(const LongMemoryModel& model, std::size_t n);

/// Exact autocovariances σ(0..m).
///
/// FI: σ(0) = σ²Γ(1−2d)/Γ(1−d)², then σ(j+1) = σ(j)(j+d)/(j+1−d).
/// FARIMA: the FI autocovariance filtered by the ARMA weights ψ = θ/φ,
/// σ(k) = Σ_m g(m) σ_FI(k + m) with g the (two-sided) autocorrelation of ψ.
/// ψ is truncated where its geometric envelope drops below 1e-18.
AutocovSeq exact_autocov(const LongMemoryModel& model, std::size_t m);

/// f(λ) = σ²/(2π) |2 sin(λ/2)|^{−2d} |θ(e^{−iλ})|² / |φ(e^{−iλ})|², so that
/// σ(k) = ∫_{−π}^{π} f(λ) e^{ikλ} dλ. λ = 0 throws SingularityError.
double spectral_density(const LongMemoryModel& model, double lambda);

/// Short-memory factor |θ(e^{−iλ})|² / |φ(e^{−iλ})|² (1 for FI).
double arma_transfer(const LongMemoryModel& model, double lambda);

}  // namespace longmem
