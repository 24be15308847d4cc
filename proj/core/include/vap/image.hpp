#pragma once

#include <string>
#include <vector>

#include "vap/types.hpp"

namespace vap::image {

// 8-bit binary PPM (P6). Values are mapped to [0,1] on read and
// quantized with rounding on write.
Frame read_ppm(const std::string& path);
void write_ppm(const Frame& frame, const std::string& path);

// Bilinear resample to (out_w, out_h). Throws DegenerateInputError for
// empty inputs or non-positive target sizes.
Frame resize_bilinear(const Frame& src, int out_w, int out_h);

// Per-pixel mean of the three channels, row-major, size w*h.
std::vector<float> to_intensity(const Frame& frame);

}  // namespace vap::image
