#include "vap/gist.hpp"

#include <cmath>
#include <fstream>

#include "fft.hpp"
#include "vap/image.hpp"

namespace vap::gist {

namespace {

GaborFilter make_filter(double frequency, double orientation, int n_orientations) {
  GaborFilter f;
  f.frequency = frequency;
  f.orientation = orientation;
  // bandwidth chosen so the half-power contours of adjacent
  // orientations touch at the filter's center frequency
  f.sigma = std::sqrt(2.0 * std::log(2.0)) /
            (2.0 * M_PI * frequency * std::sin(M_PI / n_orientations));
  f.radius = std::max(3, static_cast<int>(std::ceil(3.0 * f.sigma)));

  const int width = f.width();
  f.kernel_even.resize(static_cast<std::size_t>(width) * width);
  f.kernel_odd.resize(f.kernel_even.size());

  const double cos_t = std::cos(orientation);
  const double sin_t = std::sin(orientation);
  const double inv_two_sigma_sq = 1.0 / (2.0 * f.sigma * f.sigma);
  double even_sum = 0.0;
  for (int dy = -f.radius; dy <= f.radius; ++dy) {
    for (int dx = -f.radius; dx <= f.radius; ++dx) {
      double envelope = std::exp(-(dx * dx + dy * dy) * inv_two_sigma_sq);
      double phase = 2.0 * M_PI * frequency * (dx * cos_t + dy * sin_t);
      std::size_t i = static_cast<std::size_t>(dy + f.radius) * width + (dx + f.radius);
      f.kernel_even[i] = envelope * std::cos(phase);
      f.kernel_odd[i] = envelope * std::sin(phase);
      even_sum += f.kernel_even[i];
    }
  }

  // remove DC from the even part; the odd part is antisymmetric
  double mean = even_sum / static_cast<double>(f.kernel_even.size());
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < f.kernel_even.size(); ++i) {
    f.kernel_even[i] -= mean;
    norm_sq += f.kernel_even[i] * f.kernel_even[i] + f.kernel_odd[i] * f.kernel_odd[i];
  }
  double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (std::size_t i = 0; i < f.kernel_even.size(); ++i) {
    f.kernel_even[i] *= inv_norm;
    f.kernel_odd[i] *= inv_norm;
  }
  return f;
}

// Embeds the kernel circularly on the working grid (kernel center at
// the origin) and transforms it, so products with image spectra give
// circular convolution.
std::vector<std::complex<double>> kernel_spectrum(const GaborFilter& f, int n) {
  std::vector<std::complex<double>> grid(static_cast<std::size_t>(n) * n, {0.0, 0.0});
  for (int dy = -f.radius; dy <= f.radius; ++dy) {
    int wy = ((dy % n) + n) % n;
    for (int dx = -f.radius; dx <= f.radius; ++dx) {
      int wx = ((dx % n) + n) % n;
      grid[static_cast<std::size_t>(wy) * n + wx] +=
          std::complex<double>(f.even_at(dx, dy), f.odd_at(dx, dy));
    }
  }
  fft::fft2d(grid, n, false);
  return grid;
}

}  // namespace

GaborBank build_gabor_bank(const GistConfig& config) {
  if (config.scales.size() != config.orientations.size())
    throw Error("gist: scales and orientations lists must have equal length");
  if (config.working_size <= 0 || (config.working_size & (config.working_size - 1)) != 0)
    throw Error("gist: working_size must be a power of two");
  if (config.blocks <= 0 || config.working_size % config.blocks != 0)
    throw Error("gist: blocks must divide working_size");

  GaborBank bank;
  bank.config_ = config;
  for (std::size_t s = 0; s < config.scales.size(); ++s) {
    int n_orient = config.orientations[s];
    if (n_orient <= 0) throw Error("gist: orientation count must be positive");
    for (int o = 0; o < n_orient; ++o) {
      double theta = M_PI * o / n_orient;
      bank.filters_.push_back(make_filter(config.scales[s], theta, n_orient));
    }
  }
  bank.responses_.reserve(bank.filters_.size());
  for (const auto& f : bank.filters_)
    bank.responses_.push_back(kernel_spectrum(f, config.working_size));
  return bank;
}

GistDescriptor compute_gist(const Frame& crop, const GaborBank& bank) {
  if (crop.width < 2 || crop.height < 2)
    throw DegenerateInputError("gist: crop smaller than 2x2");

  const GistConfig& cfg = bank.config();
  const int n = cfg.working_size;
  const int block_px = n / cfg.blocks;
  Frame resized = image::resize_bilinear(crop, n, n);

  GistDescriptor out;
  out.features.assign(bank.feature_count(), 0.0);

  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(n) * n);
  std::vector<std::complex<double>> response(spectrum.size());
  const std::size_t n_filters = bank.filters().size();
  const std::size_t blocks_sq = bank.blocks_squared();

  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        spectrum[static_cast<std::size_t>(y) * n + x] = {resized.at(x, y, c), 0.0};
    fft::fft2d(spectrum, n, false);

    for (std::size_t f = 0; f < n_filters; ++f) {
      const auto& filt = bank.frequency_response(f);
      for (std::size_t i = 0; i < response.size(); ++i) response[i] = spectrum[i] * filt[i];
      fft::fft2d(response, n, true);

      double* features = &out.features[(c * n_filters + f) * blocks_sq];
      for (int y = 0; y < n; ++y) {
        int brow = y / block_px;
        for (int x = 0; x < n; ++x)
          features[brow * cfg.blocks + x / block_px] +=
              std::abs(response[static_cast<std::size_t>(y) * n + x]);
      }
      double inv_area = 1.0 / (static_cast<double>(block_px) * block_px);
      for (std::size_t b = 0; b < blocks_sq; ++b) features[b] *= inv_area;
    }
  }
  return out;
}

void write_descriptor(const GistDescriptor& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("gist: cannot write '" + path + "'");
  out.precision(17);
  for (double v : d.features) out << v << "\n";
  if (!out) throw Error("gist: write to '" + path + "' failed");
}

GistDescriptor read_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("gist: cannot open '" + path + "'");
  GistDescriptor d;
  double v;
  while (in >> v) d.features.push_back(v);
  return d;
}

}  // namespace vap::gist
