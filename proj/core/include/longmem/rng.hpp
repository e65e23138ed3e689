#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace longmem {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11).
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Counter-based normal stream addressed by (master seed, replicate, stream).
///
/// The key is the master seed; the counter is (block, stream, replicate_lo,
/// replicate_hi), so every replicate owns an independent sequence that does not
/// depend on how replicates are scheduled. Each block yields two 53-bit
/// uniforms in (0, 1), mapped to normals by the inverse CDF.
class NormalStream {
 public:
  NormalStream(std::uint64_t master_seed, std::uint64_t replicate, std::uint32_t stream = 0);

  double uniform();
  double normal();
  void fill(std::span<double> out);

 private:
  PhiloxKey key_;
  PhiloxCounter counter_;
  std::array<double, 2> buffer_{};
  int available_ = 0;
};

/// Φ^{-1}(u) for u in (0, 1).
double inverse_normal_cdf(double u);

}  // namespace longmem
