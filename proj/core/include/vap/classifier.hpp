#pragma once

#include <memory>
#include <optional>
#include <string>

#include "vap/types.hpp"

namespace vap {

// A proposal handed to a classifier: the pixels plus enough provenance
// for truth-keyed stand-ins to resolve which object the crop shows.
struct Region {
  Frame crop;
  BoundingBox box;
  int frame_index = 0;
};

// What a truth-keyed stand-in can learn about a region.
struct RegionTruth {
  std::optional<std::size_t> category;
  std::string view_tag;
  double visibility = 1.0;  // confidence attenuation in (0,1]
};

// Ground-truth access interface implemented by the scenario module.
class TruthLookup {
 public:
  virtual ~TruthLookup() = default;
  virtual RegionTruth region_truth(int frame_index, const BoundingBox& box) const = 0;
  virtual std::size_t scene_of(int frame_index) const = 0;
};

// Bottom-up object classifier over region crops. Implementations are
// pure given (region, construction-time seed/state) and re-entrant.
class BottomUpClassifier {
 public:
  virtual ~BottomUpClassifier() = default;

  // Throws DegenerateInputError when the crop is below the minimum
  // size; otherwise returns a valid per-category confidence vector.
  virtual ProbabilityVector classify(const Region& region) const = 0;

  virtual int min_region_size() const { return 2; }
};

class SceneClassifier {
 public:
  virtual ~SceneClassifier() = default;
  virtual ScenePrediction classify(const Frame& frame) const = 0;
};

}  // namespace vap
