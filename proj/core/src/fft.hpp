#pragma once

#include <complex>
#include <vector>

namespace vap::fft {

// In-place radix-2 complex FFT, n a power of two.
void fft1d(std::complex<double>* data, int n, bool inverse);

// In-place 2D FFT over an n-by-n row-major grid. The inverse transform
// includes the 1/n^2 normalization.
void fft2d(std::vector<std::complex<double>>& data, int n, bool inverse);

}  // namespace vap::fft
