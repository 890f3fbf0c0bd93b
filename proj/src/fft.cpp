#include "qtiming/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qtiming/constants.hpp"

namespace qtiming::fft {

void transform(std::span<cplx> data, int sign) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("fft: length must be a power of two");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("fft: sign must be +1 or -1");
    }
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // twiddles computed directly, not by recurrence; keeps rounding O(eps)
    std::vector<cplx> twiddle(n / 2);
    const double step = sign * 2.0 * pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = step * static_cast<double>(k);
        twiddle[k] = cplx(std::cos(a), std::sin(a));
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx w = twiddle[j * stride];
                const cplx u = data[i + j];
                const cplx v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
            }
        }
    }
}

}  // namespace qtiming::fft
