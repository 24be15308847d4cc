#include "fft.hpp"

#include <cmath>
#include <stdexcept>

namespace vap::fft {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void bit_reverse(std::complex<double>* data, int n) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

}  // namespace

void fft1d(std::complex<double>* data, int n, bool inverse) {
  bit_reverse(data, n);
  for (int len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / len * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void fft2d(std::vector<std::complex<double>>& data, int n, bool inverse) {
  if (!is_pow2(n)) throw std::invalid_argument("fft2d: size must be a power of two");
  if (data.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("fft2d: data size does not match n*n");

  for (int row = 0; row < n; ++row) fft1d(&data[static_cast<std::size_t>(row) * n], n, inverse);

  std::vector<std::complex<double>> col(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) col[y] = data[static_cast<std::size_t>(y) * n + x];
    fft1d(col.data(), n, inverse);
    for (int y = 0; y < n; ++y) data[static_cast<std::size_t>(y) * n + x] = col[y];
  }

  if (inverse) {
    double scale = 1.0 / (static_cast<double>(n) * n);
    for (auto& v : data) v *= scale;
  }
}

}  // namespace vap::fft
