#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vap/types.hpp"

namespace vap::gist {

struct GistConfig {
  std::vector<double> scales = {0.02, 0.08, 0.32};  // cycles/pixel
  std::vector<int> orientations = {8, 8, 4};
  int working_size = 128;  // crops are resized to this before filtering
  int blocks = 4;          // pooling grid per side
};

// Quadrature Gabor pair. The even (cosine) kernel has its DC component
// removed; both parts share one L2 normalization.
struct GaborFilter {
  int radius = 0;  // kernel spans (2*radius+1)^2
  double frequency = 0.0;
  double orientation = 0.0;  // radians in [0, pi)
  double sigma = 0.0;        // Gaussian envelope bandwidth
  std::vector<double> kernel_even;
  std::vector<double> kernel_odd;

  int width() const { return 2 * radius + 1; }
  double even_at(int dx, int dy) const {
    return kernel_even[static_cast<std::size_t>(dy + radius) * width() + (dx + radius)];
  }
  double odd_at(int dx, int dy) const {
    return kernel_odd[static_cast<std::size_t>(dy + radius) * width() + (dx + radius)];
  }
};

class GaborBank {
 public:
  const GistConfig& config() const { return config_; }
  const std::vector<GaborFilter>& filters() const { return filters_; }
  std::size_t feature_count() const { return 3 * filters_.size() * blocks_squared(); }
  std::size_t blocks_squared() const {
    return static_cast<std::size_t>(config_.blocks) * config_.blocks;
  }

  // Frequency response of filter `f` on the working grid (row-major
  // working_size^2), precomputed at construction.
  const std::vector<std::complex<double>>& frequency_response(std::size_t f) const {
    return responses_[f];
  }

  friend GaborBank build_gabor_bank(const GistConfig& config);

 private:
  GistConfig config_;
  std::vector<GaborFilter> filters_;
  std::vector<std::vector<std::complex<double>>> responses_;
};

// Builds the filter bank: one quadrature pair per (scale, orientation),
// orientations evenly spaced in [0, pi).
GaborBank build_gabor_bank(const GistConfig& config = {});

// 960 non-negative features for the default bank. Ordering is fixed:
// channel-major (R,G,B), then scale, then orientation within scale,
// then pooling block in row-major order; i.e.
//   index = (channel * nFilters + filter) * blocks^2 + blockRow * blocks + blockCol
struct GistDescriptor {
  std::vector<double> features;
};

// Resizes the crop bilinearly to the working size, filters each color
// channel with every bank filter (frequency domain), takes response
// magnitudes, and averages them per pooling block.
// Throws DegenerateInputError when the crop is smaller than 2x2.
GistDescriptor compute_gist(const Frame& crop, const GaborBank& bank);

// Golden-test dump format: one real per line.
void write_descriptor(const GistDescriptor& d, const std::string& path);
GistDescriptor read_descriptor(const std::string& path);

}  // namespace vap::gist
