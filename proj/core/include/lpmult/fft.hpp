#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lpmult {

using cplx = std::complex<double>;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Smallest power of two >= n.
std::size_t next_power_of_two(std::size_t n);

/// In-place iterative radix-2 transform, unnormalized:
///   forward: X_k = sum_j x_j e^{-2 pi i jk/n}
///   inverse: x_j = sum_k X_k e^{+2 pi i jk/n}   (no 1/n factor)
/// Size must be a power of two. Twiddles are taken from a table computed by
/// direct evaluation, so results are bit-reproducible on one platform.
void fft_inplace(std::span<cplx> data, bool inverse = false);

std::vector<cplx> fft(std::vector<cplx> data);
/// Inverse transform including the 1/n factor.
std::vector<cplx> ifft(std::vector<cplx> data);

/// Linear convolution truncated to its first `keep` entries.
std::vector<cplx> convolve_truncated(std::span<const cplx> a, std::span<const cplx> b,
                                     std::size_t keep);

}  // namespace lpmult
