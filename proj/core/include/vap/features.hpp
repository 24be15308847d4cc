#pragma once

#include <vector>

#include "vap/types.hpp"

namespace vap::features {

// Cheap handcrafted descriptor for the trainable bottom-up stub:
// grayscale block means, oriented gradient energy histograms, and
// per-channel color statistics.
struct FeatureConfig {
  int working_size = 32;   // crops are resized to this square
  int mean_blocks = 4;     // grid for intensity means
  int orient_bins = 8;     // gradient orientation bins over [0, pi)
  int orient_blocks = 2;   // spatial grid for orientation histograms

  std::size_t dimension() const {
    return static_cast<std::size_t>(mean_blocks) * mean_blocks +
           static_cast<std::size_t>(orient_bins) * orient_blocks * orient_blocks + 6;
  }
};

// Deterministic; throws DegenerateInputError for crops under 2x2.
std::vector<double> extract(const Frame& crop, const FeatureConfig& cfg);

}  // namespace vap::features
