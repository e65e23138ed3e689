#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "longmem/fraccoeff.hpp"
#include "longmem/sample_path.hpp"

namespace longmem {

enum class SimulationMethod { AUTO, CIRCULANT, INNOVATIONS };

const char* to_string(SimulationMethod m);

/// Exact Gaussian simulation request. `replicate` and `stream` select an
/// independent random stream under the same master seed.
struct SimulationPlan {
  AutocovSeq acov;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::uint32_t stream = 0;
  SimulationMethod method = SimulationMethod::AUTO;
};

struct SimulationOutcome {
  SamplePath path;
  SimulationMethod method;  ///< CIRCULANT or INNOVATIONS, as actually used
};

/// Relative tolerance on negative circulant eigenvalues: λ ≥ −1e-10·max λ.
inline constexpr double kEmbeddingTolerance = 1e-10;

/// Eigenvalues of the size-2(n−1) circulant embedding of σ(0..n−1).
std::vector<double> circulant_eigenvalues(const AutocovSeq& acov, std::size_t n);

/// Zero-mean Gaussian path with covariance σ(|i−j|). AUTO uses circulant
/// embedding and falls back to the innovations algorithm when an embedding
/// eigenvalue is below tolerance.
SimulationOutcome simulate_path(const SimulationPlan& plan);

SamplePath gaussian_sample(const SimulationPlan& plan);

}  // namespace longmem
