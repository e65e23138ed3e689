#include "longmem/sample_path.hpp"

#include <algorithm>
#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

SamplePath::SamplePath(std::vector<double> values, std::optional<std::uint64_t> seed,
                       std::optional<LongMemoryModel> model)
    : values_(std::move(values)), seed_(seed), model_(std::move(model)) {
  if (values_.empty()) throw ArgumentError("sample path must hold at least one value");
  if (!std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); })) {
    throw DomainError("sample path contains a non-finite value");
  }
}

SamplePath SamplePath::last(std::size_t count) const {
  if (count == 0 || count > values_.size()) {
    throw ArgumentError("window of " + std::to_string(count) + " values requested from a path of " +
                        std::to_string(values_.size()));
  }
  return SamplePath({values_.end() - static_cast<std::ptrdiff_t>(count), values_.end()}, seed_,
                    model_);
}

}  // namespace longmem
