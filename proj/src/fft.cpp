#include "wnav/fft.hpp"

#include "wnav/error.hpp"

#include <cmath>
#include <numbers>

namespace wnav {

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ContractError("fft size must be a power of two, got " + std::to_string(n));
    }

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = 2.0 * std::numbers::pi / static_cast<double>(len) *
                             (inverse ? 1.0 : -1.0);
        const std::complex<double> step(std::cos(angle), std::sin(angle));
        for (std::size_t block = 0; block < n; block += len) {
            std::complex<double> twiddle(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> even = data[block + k];
                const std::complex<double> odd = data[block + k + len / 2] * twiddle;
                data[block + k] = even + odd;
                data[block + k + len / 2] = even - odd;
                twiddle *= step;
            }
        }
    }

    if (inverse) {
        for (auto& value : data) {
            value /= static_cast<double>(n);
        }
    }
}

}  // namespace wnav
