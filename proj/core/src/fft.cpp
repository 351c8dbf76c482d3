#include "levyprem/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "levyprem/errors.hpp"

namespace levyprem {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_forward(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw DomainError("fft_forward: size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles from the angle directly; repeated multiplication drifts.
  std::vector<std::complex<double>> twiddle(n / 2);
  const double base = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < twiddle.size(); ++k) {
    twiddle[k] = std::polar(1.0, base * static_cast<double>(k));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> even = data[start + k];
        const std::complex<double> odd = data[start + k + half] * twiddle[k * stride];
        data[start + k] = even + odd;
        data[start + k + half] = even - odd;
      }
    }
  }
}

}  // namespace levyprem
