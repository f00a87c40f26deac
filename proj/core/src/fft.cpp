#include "lpmult/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace lpmult {

namespace {

constexpr double kTwoPiFft = 6.28318530717958647692;

// Twiddle table w_k = e^{-2 pi i k/n}, k < n/2, per size.
const std::vector<cplx>& twiddles(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<std::vector<cplx>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<std::vector<cplx>>(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -kTwoPiFft * static_cast<double>(k) / static_cast<double>(n);
      (*slot)[k] = {std::cos(ang), std::sin(ang)};
    }
  }
  return *slot;
}

}  // namespace

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::span<cplx> data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft size must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const auto& w = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx tw = w[k * stride];
        if (inverse) tw = std::conj(tw);
        const cplx u = data[start + k];
        const cplx v = data[start + k + half] * tw;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

std::vector<cplx> fft(std::vector<cplx> data) {
  fft_inplace(data, false);
  return data;
}

std::vector<cplx> ifft(std::vector<cplx> data) {
  fft_inplace(data, true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& x : data) x *= scale;
  return data;
}

std::vector<cplx> convolve_truncated(std::span<const cplx> a, std::span<const cplx> b,
                                     std::size_t keep) {
  if (a.empty() || b.empty() || keep == 0) return std::vector<cplx>(keep);
  const std::size_t la = std::min(a.size(), keep), lb = std::min(b.size(), keep);
  const std::size_t n = next_power_of_two(la + lb - 1);
  std::vector<cplx> fa(n), fb(n);
  std::copy_n(a.begin(), la, fa.begin());
  std::copy_n(b.begin(), lb, fb.begin());
  fft_inplace(fa);
  fft_inplace(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fa = ifft(std::move(fa));
  fa.resize(keep);
  return fa;
}

}  // namespace lpmult
