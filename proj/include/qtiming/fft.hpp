#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qtiming::fft {

using cplx = std::complex<double>;

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

/// In-place radix-2 transform, X_k = sum_j x_j exp(sign * 2*pi*i * j*k / n).
/// Unnormalized; n must be a power of two. sign must be +1 or -1.
void transform(std::span<cplx> data, int sign);

}  // namespace qtiming::fft
