#pragma once
#include <complex>
#include <vector>

namespace radgas {

bool is_pow2(int n);

// In-place radix-2 transform; n must be a power of two. Forward is unnormalized,
// inverse divides by n.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

} // namespace radgas
