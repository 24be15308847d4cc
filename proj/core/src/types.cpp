#include "vap/types.hpp"

#include <cmath>
#include <unordered_set>

namespace vap {

CategoryCatalog::CategoryCatalog(std::vector<CategoryDescriptor> categories)
    : categories_(std::move(categories)) {
  if (categories_.empty()) throw Error("catalog: category list must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& c : categories_) {
    if (c.name.empty()) throw Error("catalog: empty category name");
    if (!seen.insert(c.name).second)
      throw Error("catalog: duplicate category name '" + c.name + "'");
  }
}

bool CategoryCatalog::has(const std::string& name) const {
  for (const auto& c : categories_)
    if (c.name == name) return true;
  return false;
}

std::size_t CategoryCatalog::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < categories_.size(); ++i)
    if (categories_[i].name == name) return i;
  throw Error("catalog: unknown category '" + name + "'");
}

const CategoryCatalog& default_catalog() {
  static const CategoryCatalog catalog{{
      {"cabinet", CategoryKind::ManMade},
      {"chair", CategoryKind::ManMade},
      {"person", CategoryKind::Natural},
      {"bed", CategoryKind::ManMade},
      {"car", CategoryKind::ManMade},
      {"plant", CategoryKind::Natural},
      {"plant_pot", CategoryKind::ManMade},
      {"desk", CategoryKind::ManMade},
      {"sink", CategoryKind::ManMade},
      {"clock", CategoryKind::ManMade},
      {"sofa", CategoryKind::ManMade},
      {"bookcase", CategoryKind::ManMade},
      {"television", CategoryKind::ManMade},
      {"telephone", CategoryKind::ManMade},
      {"boat", CategoryKind::ManMade},
      {"shoe", CategoryKind::ManMade},
      {"washing_machine", CategoryKind::ManMade},
      {"traffic_lights", CategoryKind::ManMade},
      {"bicycle", CategoryKind::ManMade},
      {"teddy_bear", CategoryKind::ManMade},
      {"cow", CategoryKind::Natural},
      {"dog", CategoryKind::Natural},
      {"crosswalk", CategoryKind::ManMade},
      {"conference_table", CategoryKind::ManMade},
      {"aircraft", CategoryKind::ManMade},
  }};
  return catalog;
}

std::size_t ProbabilityVector::argmax() const {
  if (values.empty()) return 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

double ProbabilityVector::max_value() const {
  return values.empty() ? 0.0 : values[argmax()];
}

void ProbabilityVector::validate(std::size_t expected_size) const {
  if (expected_size != 0 && values.size() != expected_size)
    throw Error("probability vector: length " + std::to_string(values.size()) +
                " does not match catalog size " + std::to_string(expected_size));
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw Error("probability vector: entry " + std::to_string(v) + " outside [0,1]");
  }
}

BoundingBox BoundingBox::clamped(int frame_w, int frame_h) const {
  int nx = std::max(0, x);
  int ny = std::max(0, y);
  int nx2 = std::min(frame_w, x + w);
  int ny2 = std::min(frame_h, y + h);
  return {nx, ny, std::max(0, nx2 - nx), std::max(0, ny2 - ny)};
}

long long intersection_area(const BoundingBox& a, const BoundingBox& b) {
  int ix = std::max(a.x, b.x);
  int iy = std::max(a.y, b.y);
  int ix2 = std::min(a.x2(), b.x2());
  int iy2 = std::min(a.y2(), b.y2());
  if (ix2 <= ix || iy2 <= iy) return 0;
  return static_cast<long long>(ix2 - ix) * (iy2 - iy);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  long long inter = intersection_area(a, b);
  long long uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Frame Frame::crop(const BoundingBox& box) const {
  BoundingBox b = box.clamped(width, height);
  if (!b.valid())
    throw DegenerateInputError("crop: box outside frame or empty after clamping");
  Frame out(b.w, b.h);
  out.index = index;
  out.timestamp = timestamp;
  for (int y = 0; y < b.h; ++y) {
    const float* src = &pixels[offset(b.x, b.y + y)];
    float* dst = &out.pixels[out.offset(0, y)];
    std::copy(src, src + static_cast<std::size_t>(b.w) * 3, dst);
  }
  return out;
}

}  // namespace vap
