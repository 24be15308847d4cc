#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vap {

// Base error for anything the engine rejects with a diagnostic.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input too small / empty for the requested operation.
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

enum class CategoryKind { ManMade, Natural };

struct CategoryDescriptor {
  std::string name;
  CategoryKind kind = CategoryKind::ManMade;
};

// Ordered, immutable list of recognizable object categories. Every
// probability vector and context matrix in the engine indexes into it.
class CategoryCatalog {
 public:
  CategoryCatalog() = default;
  explicit CategoryCatalog(std::vector<CategoryDescriptor> categories);

  std::size_t size() const { return categories_.size(); }
  const std::string& name(std::size_t i) const { return categories_.at(i).name; }
  CategoryKind kind(std::size_t i) const { return categories_.at(i).kind; }
  const std::vector<CategoryDescriptor>& categories() const { return categories_; }

  bool has(const std::string& name) const;
  // Throws Error for unknown names.
  std::size_t index_of(const std::string& name) const;

 private:
  std::vector<CategoryDescriptor> categories_;
};

// The 25-category catalog used throughout the shipped scenarios.
const CategoryCatalog& default_catalog();

// Per-category confidence scores in [0, 1]. Intentionally not a
// distribution: detectors emit independent per-class confidences.
struct ProbabilityVector {
  std::vector<double> values;

  ProbabilityVector() = default;
  explicit ProbabilityVector(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit ProbabilityVector(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  std::size_t argmax() const;
  double max_value() const;

  // Throws Error unless every entry is finite and in [0, 1] and the
  // length matches `expected_size` (when nonzero).
  void validate(std::size_t expected_size = 0) const;
};

struct BoundingBox {
  int x = 0;  // top-left, pixels
  int y = 0;
  int w = 0;
  int h = 0;

  bool valid() const { return w > 0 && h > 0; }
  long long area() const { return static_cast<long long>(w) * h; }
  double cx() const { return x + 0.5 * w; }
  double cy() const { return y + 0.5 * h; }
  int x2() const { return x + w; }  // exclusive
  int y2() const { return y + h; }

  BoundingBox clamped(int frame_w, int frame_h) const;
  bool operator==(const BoundingBox& o) const = default;
};

long long intersection_area(const BoundingBox& a, const BoundingBox& b);
// Symmetric, in [0,1]; iou(b,b) == 1 for valid boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

// RGB raster, channel-interleaved, intensities in [0, 1].
struct Frame {
  int index = 0;
  double timestamp = 0.0;  // seconds
  int width = 0;
  int height = 0;
  std::vector<float> pixels;  // height*width*3, row-major

  Frame() = default;
  Frame(int w, int h, float fill = 0.0f)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {}

  bool empty() const { return width <= 0 || height <= 0; }
  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * width + x) * 3;
  }
  float at(int x, int y, int c) const { return pixels[offset(x, y) + c]; }
  float& at(int x, int y, int c) { return pixels[offset(x, y) + c]; }
  // mean of the three channels
  float intensity(int x, int y) const {
    std::size_t o = offset(x, y);
    return (pixels[o] + pixels[o + 1] + pixels[o + 2]) / 3.0f;
  }

  // Extracts the sub-image under `box` clamped to frame bounds.
  // Throws DegenerateInputError when the clamped box is empty.
  Frame crop(const BoundingBox& box) const;
};

struct ScenePrediction {
  int scene_id = 0;
  double confidence = 0.0;  // in [0,1]
};

struct Detection {
  BoundingBox box;
  ProbabilityVector probs;
  int frame_index = 0;
};

}  // namespace vap
