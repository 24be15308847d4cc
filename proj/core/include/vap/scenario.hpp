#pragma once

#include <array>
#include <string>
#include <vector>

#include "vap/classifier.hpp"
#include "vap/context.hpp"
#include "vap/types.hpp"

namespace vap::scenario {

struct Waypoint {
  int frame = 0;
  double x = 0.0;  // object center
  double y = 0.0;
};

struct ObjectTrack {
  std::string category;
  std::vector<Waypoint> waypoints;  // piecewise-linear center trajectory
  int width = 16;
  int height = 16;
  int texture_id = -1;   // -1: texture keyed by category
  std::string view_tag;  // "" = canonical view
};

// [from, to) frame ranges
struct SceneSegment {
  std::string scene;
  int from = 0;
  int to = 0;
};

struct LightingSegment {
  int from = 0;
  int to = 0;
  double gain = 1.0;
};

// Classifier-injection row: confusion between two categories at a
// given ambiguity, optionally restricted to a view tag.
struct InjectionSpec {
  std::string category;
  std::string partner;
  std::string view_tag;
  double ambiguity = 0.0;
  double noise = 0.0;
};

// Degrades classifier visibility for one object over a frame window
// (stands in for occlusion and shading).
struct OcclusionWindow {
  int object = 0;
  int from = 0;
  int to = 0;
  double visibility = 1.0;
};

struct ScenarioSpec {
  std::string name = "scenario";
  int frames = 0;
  int width = 128;
  int height = 96;
  std::uint64_t seed = 1;
  std::vector<std::string> scenes;
  std::vector<SceneSegment> schedule;
  std::vector<ObjectTrack> objects;
  std::vector<LightingSegment> lighting;
  std::vector<InjectionSpec> injections;
  std::vector<OcclusionWindow> occlusions;

  // Throws Error with a message naming the offending field.
  void validate(const CategoryCatalog& catalog) const;
};

ScenarioSpec load_spec(const std::string& path);
void save_spec(const ScenarioSpec& spec, const std::string& path);

struct GroundTruthObject {
  int object_id = 0;  // index into spec.objects
  std::size_t category = 0;
  BoundingBox box;
  std::string view_tag;
  double visibility = 1.0;
};

// Exact per-frame truth derived from the spec; doubles as the lookup
// interface the truth-keyed classifier stand-ins consume.
class GroundTruth : public TruthLookup {
 public:
  GroundTruth(const ScenarioSpec& spec, const CategoryCatalog& catalog);

  std::size_t scene_of(int frame_index) const override;
  RegionTruth region_truth(int frame_index, const BoundingBox& box) const override;

  const std::vector<GroundTruthObject>& objects_in(int frame_index) const;
  int frames() const { return static_cast<int>(objects_per_frame_.size()); }

  static constexpr double kMatchIou = 0.25;

 private:
  std::vector<std::size_t> scene_per_frame_;
  std::vector<std::vector<GroundTruthObject>> objects_per_frame_;
};

// Procedural texture assigned to a category (or overridden by
// texture_id). Man-made categories get a clean oriented grating;
// natural ones a broadband mixture.
struct TextureParams {
  double frequency = 0.2;    // cycles/pixel
  double orientation = 0.0;  // radians
  bool broadband = false;
  std::array<double, 3> tint = {1.0, 1.0, 1.0};
};

TextureParams category_texture(const CategoryCatalog& catalog, std::size_t category,
                               const std::string& view_tag);
TextureParams texture_by_id(int texture_id);

// Standalone patch render (classifier training data).
Frame texture_patch(const TextureParams& params, int width, int height, double phase,
                    double contrast);

// Training crop rendered the way the frame renderer draws objects:
// category texture in the category's shape over the neutral
// background, with `margin` background pixels on each side.
Frame object_crop(const CategoryCatalog& catalog, std::size_t category,
                  const std::string& view_tag, int width, int height, double phase,
                  double contrast, int margin = 2);

// Deterministic frame renderer; ground truth is exact by construction.
class ScenarioRun {
 public:
  ScenarioRun(ScenarioSpec spec, const CategoryCatalog& catalog);

  const ScenarioSpec& spec() const { return spec_; }
  const GroundTruth& truth() const { return truth_; }
  const CategoryCatalog& catalog() const { return *catalog_; }

  Frame render_frame(int index) const;

 private:
  ScenarioSpec spec_;
  const CategoryCatalog* catalog_;
  GroundTruth truth_;
};

// Scene catalog covering a suite, ordered by first appearance.
context::SceneCatalog scene_catalog_from(const std::vector<ScenarioSpec>& suite);

// Tallies SO/OO counts from suite ground truth: one count (times
// `weight`) per category per scene segment, one per co-appearing pair.
context::ContextState bootstrap_context(const std::vector<ScenarioSpec>& suite,
                                        const context::SceneCatalog& scenes,
                                        const CategoryCatalog& catalog, double weight = 1.0,
                                        double eps_s = 1.0, double eps_o = 1.0);

namespace presets {

// Single car crossing a street scene; smallest end-to-end example.
ScenarioSpec tiny_demo();

// Confusable-pair suite: injected car/boat and person/cow ambiguity
// resolved by scene context.
std::vector<ScenarioSpec> ambiguity_suite();

// Car crossing with two 5-frame windows of visibility 0.15.
ScenarioSpec occlusion();

// Repeated elevated-view bicycle passes with idle gaps between them;
// exercises gap harvesting and idle-time refinement.
ScenarioSpec viewpoint_shift();

std::vector<ScenarioSpec> by_name(const std::string& name);

// Suite used to tally the SO/OO bootstrap tables for a preset; stands
// in for large-corpus pre-training at desk scale.
std::vector<ScenarioSpec> bootstrap_suite(const std::string& name);

// Smoothing-count multiplier that makes the bootstrap informative.
constexpr double kBootstrapWeight = 25.0;

}  // namespace presets

}  // namespace vap::scenario
