#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "longmem/fraccoeff.hpp"

namespace longmem {

/// Observed or simulated series, oldest value first. The one-step forecast
/// target is the (unobserved) element following `values.back()`.
class SamplePath {
 public:
  explicit SamplePath(std::vector<double> values, std::optional<std::uint64_t> seed = {},
                      std::optional<LongMemoryModel> model = {});

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }
  const std::optional<LongMemoryModel>& model() const noexcept { return model_; }

  /// The `count` most recent values, still oldest first.
  SamplePath last(std::size_t count) const;

 private:
  std::vector<double> values_;
  std::optional<std::uint64_t> seed_;
  std::optional<LongMemoryModel> model_;
};

}  // namespace longmem
