#include "vap/features.hpp"

#include <cmath>

#include "vap/image.hpp"

namespace vap::features {

std::vector<double> extract(const Frame& crop, const FeatureConfig& cfg) {
  if (crop.width < 2 || crop.height < 2)
    throw DegenerateInputError("features: crop smaller than 2x2");

  const int n = cfg.working_size;
  Frame img = image::resize_bilinear(crop, n, n);
  std::vector<float> gray = image::to_intensity(img);

  std::vector<double> out;
  out.reserve(cfg.dimension());

  // intensity means over a mean_blocks x mean_blocks grid
  const int mb = cfg.mean_blocks;
  const int mb_px = n / mb;
  for (int by = 0; by < mb; ++by) {
    for (int bx = 0; bx < mb; ++bx) {
      double sum = 0.0;
      for (int y = 0; y < mb_px; ++y)
        for (int x = 0; x < mb_px; ++x)
          sum += gray[static_cast<std::size_t>(by * mb_px + y) * n + bx * mb_px + x];
      out.push_back(sum / (static_cast<double>(mb_px) * mb_px));
    }
  }

  // Sobel orientation-energy histograms over an orient_blocks grid
  const int ob = cfg.orient_blocks;
  const int ob_px = n / ob;
  std::vector<double> hist(static_cast<std::size_t>(cfg.orient_bins) * ob * ob, 0.0);
  for (int y = 1; y < n - 1; ++y) {
    for (int x = 1; x < n - 1; ++x) {
      auto g = [&](int xx, int yy) { return gray[static_cast<std::size_t>(yy) * n + xx]; };
      double gx = (g(x + 1, y - 1) + 2.0 * g(x + 1, y) + g(x + 1, y + 1)) -
                  (g(x - 1, y - 1) + 2.0 * g(x - 1, y) + g(x - 1, y + 1));
      double gy = (g(x - 1, y + 1) + 2.0 * g(x, y + 1) + g(x + 1, y + 1)) -
                  (g(x - 1, y - 1) + 2.0 * g(x, y - 1) + g(x + 1, y - 1));
      double mag = std::sqrt(gx * gx + gy * gy);
      if (mag < 1e-9) continue;
      double angle = std::atan2(gy, gx);  // (-pi, pi]
      if (angle < 0) angle += M_PI;       // fold to [0, pi)
      if (angle >= M_PI) angle -= M_PI;
      int bin = std::min(cfg.orient_bins - 1,
                         static_cast<int>(angle / M_PI * cfg.orient_bins));
      int cell = std::min(ob - 1, y / ob_px) * ob + std::min(ob - 1, x / ob_px);
      hist[static_cast<std::size_t>(cell) * cfg.orient_bins + bin] += mag;
    }
  }
  double inv_px = 1.0 / (static_cast<double>(n) * n);
  for (double v : hist) out.push_back(v * inv_px);

  // per-channel mean and standard deviation
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0, sq = 0.0;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        double v = img.at(x, y, c);
        sum += v;
        sq += v * v;
      }
    }
    double count = static_cast<double>(n) * n;
    double mean = sum / count;
    out.push_back(mean);
    out.push_back(std::sqrt(std::max(0.0, sq / count - mean * mean)));
  }
  return out;
}

}  // namespace vap::features
