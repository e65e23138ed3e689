#include "longmem/special.hpp"

#include <array>
#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

double SignedLog::value() const { return sign * std::exp(log_abs); }

SignedLog log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("log_gamma: pole at non-positive integer");
  }
  SignedLog out;
#if defined(__GLIBC__)
  out.log_abs = ::lgamma_r(x, &out.sign);
#else
  out.log_abs = std::lgamma(x);
  if (x < 0.0) {
    // Γ alternates sign between consecutive negative integers.
    const auto cell = static_cast<long long>(std::floor(x));
    out.sign = (cell % 2 == 0) ? 1 : -1;
  }
#endif
  return out;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) {
    throw DomainError("hurwitz_zeta requires s > 1 and q > 0");
  }
  // Shift q up until Euler-Maclaurin with a handful of Bernoulli terms is
  // accurate to double precision.
  constexpr double kShift = 16.0;
  double head = 0.0;
  while (q < kShift) {
    head += std::pow(q, -s);
    q += 1.0;
  }
  // B_{2m} / (2m)!
  constexpr std::array<double, 6> kB = {1.0 / 12.0,        -1.0 / 720.0,
                                        1.0 / 30240.0,     -1.0 / 1209600.0,
                                        1.0 / 47900160.0,  -691.0 / 1307674368000.0};
  double tail = std::pow(q, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(q, -s);
  double rising = s;               // s (s+1) ... (s+2m-2)
  double qpow = std::pow(q, -s - 1.0);
  for (std::size_t m = 0; m < kB.size(); ++m) {
    tail += kB[m] * rising * qpow;
    rising *= (s + 2.0 * m + 1.0) * (s + 2.0 * m + 2.0);
    qpow /= q * q;
  }
  return head + tail;
}

}  // namespace longmem
