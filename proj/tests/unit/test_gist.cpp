#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vap/gist.hpp"
#include "vap/rng.hpp"

using namespace vap;
using namespace vap::gist;

namespace {

Frame grating(int w, int h, double freq, double theta, double contrast = 1.0) {
  Frame f(w, h);
  double ct = std::cos(theta), st = std::sin(theta);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double v = 0.5 + 0.5 * contrast * std::sin(2.0 * M_PI * freq * (x * ct + y * st));
      for (int c = 0; c < 3; ++c) f.at(x, y, c) = static_cast<float>(v);
    }
  return f;
}

// direct spatial convolution of the quadrature pair at one pixel grid,
// mean magnitude over the valid interior
double direct_mean_energy(const Frame& img, const GaborFilter& f) {
  int r = f.radius;
  double total = 0.0;
  int count = 0;
  for (int y = r; y < img.height - r; y += 3) {
    for (int x = r; x < img.width - r; x += 3) {
      double re = 0.0, im = 0.0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          double v = img.intensity(x + dx, y + dy);
          re += v * f.even_at(dx, dy);
          im += v * f.odd_at(dx, dy);
        }
      total += std::sqrt(re * re + im * im);
      ++count;
    }
  }
  return count ? total / count : 0.0;
}

}  // namespace

TEST_CASE("default bank has 20 zero-mean filters with even orientation spacing") {
  GaborBank bank = build_gabor_bank();
  REQUIRE(bank.filters().size() == 20);

  std::size_t idx = 0;
  const GistConfig& cfg = bank.config();
  for (std::size_t s = 0; s < cfg.scales.size(); ++s) {
    for (int o = 0; o < cfg.orientations[s]; ++o, ++idx) {
      const GaborFilter& f = bank.filters()[idx];
      CHECK(f.frequency == doctest::Approx(cfg.scales[s]));
      CHECK(f.orientation ==
            doctest::Approx(M_PI * o / cfg.orientations[s]).epsilon(1e-12));
      double even_sum = 0.0, odd_sum = 0.0;
      for (std::size_t i = 0; i < f.kernel_even.size(); ++i) {
        even_sum += f.kernel_even[i];
        odd_sum += f.kernel_odd[i];
      }
      CHECK(std::abs(even_sum) < 1e-9);
      CHECK(std::abs(odd_sum) < 1e-9);
    }
  }
}

TEST_CASE("every filter prefers its own orientation over the orthogonal filter") {
  GaborBank bank = build_gabor_bank();
  const GistConfig& cfg = bank.config();
  std::size_t base = 0;
  for (std::size_t s = 0; s < cfg.scales.size(); ++s) {
    int n_orient = cfg.orientations[s];
    for (int o = 0; o < n_orient; ++o) {
      const GaborFilter& matched = bank.filters()[base + o];
      // the pi/2 rotation sits n/2 slots away in the same scale
      const GaborFilter& orthogonal = bank.filters()[base + (o + n_orient / 2) % n_orient];
      int size = std::max(64, 2 * matched.radius + 16);
      Frame probe = grating(size, size, matched.frequency, matched.orientation);
      CHECK(direct_mean_energy(probe, matched) > direct_mean_energy(probe, orthogonal));
    }
    base += static_cast<std::size_t>(n_orient);
  }
}

TEST_CASE("uniform gray crop gives an all-zero descriptor") {
  GaborBank bank = build_gabor_bank();
  Frame gray(40, 30, 0.5f);
  GistDescriptor d = compute_gist(gray, bank);
  REQUIRE(d.features.size() == 960);
  for (double v : d.features) {
    CHECK(v >= 0.0);
    CHECK(v < 1e-6);
  }
}

TEST_CASE("descriptor length is 960 on arbitrary crops") {
  GaborBank bank = build_gabor_bank();
  Rng rng(4);
  Frame noisy(23, 57);
  for (auto& px : noisy.pixels) px = static_cast<float>(rng.next_double());
  CHECK(compute_gist(noisy, bank).features.size() == 960);
  CHECK(compute_gist(grating(128, 128, 0.08, 0.3), bank).features.size() == 960);
  CHECK_THROWS_AS(compute_gist(Frame(1, 5), bank), DegenerateInputError);
}

TEST_CASE("vertical grating at 0.08 cpp dominates the matching scale-2 orientation") {
  GaborBank bank = build_gabor_bank();
  // vertical stripes vary along x: orientation angle 0 in the filter's
  // (cos, sin) convention
  Frame probe = grating(128, 128, 0.08, 0.0);
  GistDescriptor d = compute_gist(probe, bank);

  const std::size_t blocks = bank.blocks_squared();
  const std::size_t n_filters = bank.filters().size();
  // scale 2 occupies filter indices 8..15
  for (int channel = 0; channel < 3; ++channel) {
    double matched = 0.0;
    std::vector<double> others;
    for (std::size_t f = 8; f < 16; ++f) {
      double sum = 0.0;
      for (std::size_t b = 0; b < blocks; ++b)
        sum += d.features[(channel * n_filters + f) * blocks + b];
      if (f == 8)
        matched = sum;
      else
        others.push_back(sum);
    }
    for (double o : others) CHECK(matched > o);
  }
}

TEST_CASE("permuting color channels permutes the channel-major groups") {
  GaborBank bank = build_gabor_bank();
  Rng rng(9);
  Frame img(48, 36);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<float>(rng.next_double());

  Frame swapped = img;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      swapped.at(x, y, 0) = img.at(x, y, 1);
      swapped.at(x, y, 1) = img.at(x, y, 0);
    }

  GistDescriptor a = compute_gist(img, bank);
  GistDescriptor b = compute_gist(swapped, bank);
  std::size_t group = bank.filters().size() * bank.blocks_squared();
  for (std::size_t i = 0; i < group; ++i) {
    CHECK(a.features[i] == doctest::Approx(b.features[group + i]).epsilon(1e-12));
    CHECK(a.features[group + i] == doctest::Approx(b.features[i]).epsilon(1e-12));
    CHECK(a.features[2 * group + i] == doctest::Approx(b.features[2 * group + i]).epsilon(1e-12));
  }
}

TEST_CASE("compute_gist is deterministic") {
  GaborBank bank = build_gabor_bank();
  Frame probe = grating(50, 40, 0.2, 1.1);
  GistDescriptor a = compute_gist(probe, bank);
  GistDescriptor b = compute_gist(probe, bank);
  CHECK(a.features == b.features);
}

TEST_CASE("descriptor dump round trip") {
  GaborBank bank = build_gabor_bank();
  GistDescriptor d = compute_gist(grating(64, 64, 0.08, 0.5), bank);
  std::string path = (std::filesystem::temp_directory_path() / "vap_gist_dump.txt").string();
  write_descriptor(d, path);
  GistDescriptor loaded = read_descriptor(path);
  REQUIRE(loaded.features.size() == d.features.size());
  for (std::size_t i = 0; i < d.features.size(); ++i)
    CHECK(loaded.features[i] == doctest::Approx(d.features[i]).epsilon(1e-12));
  std::remove(path.c_str());
}
