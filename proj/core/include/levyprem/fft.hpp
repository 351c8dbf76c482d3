#pragma once

#include <complex>
#include <span>

namespace levyprem {

/// In-place radix-2 forward DFT, X_k = sum_j x_j exp(-2 pi i jk / N).
/// Size must be a power of two. No normalisation is applied.
void fft_forward(std::span<std::complex<double>> data);

bool is_power_of_two(std::size_t n);

}  // namespace levyprem
