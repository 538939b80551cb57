#pragma once

#include <complex>
#include <vector>

namespace wnav {

/// Iterative radix-2 transform; size must be a power of two. The inverse
/// applies the 1/N factor. Matches a direct O(N^2) DFT to 1e-9 relative.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace wnav
