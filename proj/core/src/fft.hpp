#pragma once

// Thin FFTW wrapper. Plans are created with FFTW_ESTIMATE so results are a
// deterministic function of the input; planning is serialized because the
// FFTW planner is not reentrant.

#include <complex>
#include <span>
#include <vector>

namespace longmem::detail {

/// Unnormalized forward DFT of a real sequence, bins 0..n/2.
std::vector<std::complex<double>> dft_real(std::span<const double> x);

/// Unnormalized forward DFT (sign -1) of a complex sequence.
std::vector<std::complex<double>> dft_complex(std::span<const std::complex<double>> x);

}  // namespace longmem::detail
