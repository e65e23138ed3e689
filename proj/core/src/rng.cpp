#include "longmem/rng.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

NormalStream::NormalStream(std::uint64_t master_seed, std::uint64_t replicate, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
      counter_{0u, stream, static_cast<std::uint32_t>(replicate),
               static_cast<std::uint32_t>(replicate >> 32)} {}

double NormalStream::uniform() {
  if (available_ == 0) {
    const PhiloxCounter r = philox4x32(counter_, key_);
    if (++counter_[0] == 0) throw ArgumentError("random stream exhausted");
    for (int i = 0; i < 2; ++i) {
      const std::uint64_t bits =
          (static_cast<std::uint64_t>(r[2 * i] >> 5) << 26) | (r[2 * i + 1] >> 6);
      buffer_[static_cast<std::size_t>(i)] = (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }
    available_ = 2;
  }
  return buffer_[static_cast<std::size_t>(2 - available_--)];
}

double NormalStream::normal() { return inverse_normal_cdf(uniform()); }

void NormalStream::fill(std::span<double> out) {
  for (double& x : out) x = normal();
}

double inverse_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse normal CDF needs u in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

}  // namespace longmem
