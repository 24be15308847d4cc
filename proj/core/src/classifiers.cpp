#include "vap/classifiers.hpp"

#include <algorithm>

#include "vap/rng.hpp"

namespace vap {

namespace {

void check_region(const Region& region, int min_size) {
  if (region.crop.width < min_size || region.crop.height < min_size)
    throw DegenerateInputError("classifier: region smaller than minimum size " +
                               std::to_string(min_size));
}

std::uint64_t region_hash(std::uint64_t seed, const Region& region) {
  std::uint64_t h = seed;
  h = hash_combine(h, static_cast<std::uint64_t>(region.frame_index));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(region.box.x)));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(region.box.y)));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(region.box.w)));
  h = hash_combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(region.box.h)));
  return h;
}

}  // namespace

OracleClassifier::OracleClassifier(const CategoryCatalog& catalog, const TruthLookup& truth)
    : n_categories_(catalog.size()), truth_(truth) {}

ProbabilityVector OracleClassifier::classify(const Region& region) const {
  check_region(region, min_region_size());
  ProbabilityVector out(n_categories_, 0.0);
  RegionTruth t = truth_.region_truth(region.frame_index, region.box);
  if (t.category) out[*t.category] = std::clamp(t.visibility, 0.0, 1.0);
  return out;
}

ConfusablePairClassifier::ConfusablePairClassifier(const CategoryCatalog& catalog,
                                                   const TruthLookup& truth,
                                                   std::vector<ConfusionEntry> entries,
                                                   std::uint64_t seed)
    : n_categories_(catalog.size()), truth_(truth), entries_(std::move(entries)), seed_(seed) {
  for (const auto& e : entries_) {
    if (e.category >= n_categories_ || e.partner >= n_categories_)
      throw Error("confusable classifier: entry category outside catalog");
    if (!(e.ambiguity >= 0.0 && e.ambiguity <= 1.0))
      throw Error("confusable classifier: ambiguity outside [0,1]");
  }
}

const ConfusionEntry* ConfusablePairClassifier::find_entry(std::size_t category,
                                                           const std::string& view_tag) const {
  const ConfusionEntry* any_view = nullptr;
  for (const auto& e : entries_) {
    if (e.category != category) continue;
    if (e.view_tag == view_tag) return &e;
    if (e.view_tag.empty()) any_view = &e;
  }
  return any_view;
}

ProbabilityVector ConfusablePairClassifier::classify(const Region& region) const {
  check_region(region, min_region_size());
  ProbabilityVector out(n_categories_, 0.0);
  RegionTruth t = truth_.region_truth(region.frame_index, region.box);
  if (!t.category) return out;

  double vis = std::clamp(t.visibility, 0.0, 1.0);
  const ConfusionEntry* entry = find_entry(*t.category, t.view_tag);
  if (!entry) {
    out[*t.category] = vis;
    return out;
  }
  double jitter = 0.0;
  if (entry->noise > 0.0)
    jitter = entry->noise * (2.0 * hash_to_unit(region_hash(seed_, region)) - 1.0);
  double on_true = std::clamp(1.0 - entry->ambiguity + jitter, 0.0, 1.0);
  double on_partner = std::clamp(entry->ambiguity - jitter, 0.0, 1.0);
  out[*t.category] = on_true * vis;
  out[entry->partner] = on_partner * vis;
  return out;
}

FeatureStubClassifier::FeatureStubClassifier(const CategoryCatalog& catalog,
                                             features::FeatureConfig feature_cfg,
                                             std::shared_ptr<const svm::MulticlassSvm> model)
    : n_categories_(catalog.size()), feature_cfg_(feature_cfg), model_(std::move(model)) {}

std::vector<double> FeatureStubClassifier::extract(const Region& region) const {
  check_region(region, min_region_size());
  return features::extract(region.crop, feature_cfg_);
}

ProbabilityVector FeatureStubClassifier::classify(const Region& region) const {
  return classify_from(extract(region));
}

ProbabilityVector FeatureStubClassifier::classify_from(const std::vector<double>& features) const {
  std::shared_ptr<const svm::MulticlassSvm> m = model();
  std::vector<double> p = m->probabilities(features);
  p.resize(n_categories_, 0.0);
  for (double& v : p) v = std::clamp(v, 0.0, 1.0);
  return ProbabilityVector(std::move(p));
}

std::shared_ptr<const svm::MulticlassSvm> FeatureStubClassifier::model() const {
  std::lock_guard<std::mutex> lock(model_mutex_);
  return model_;
}

void FeatureStubClassifier::publish(std::shared_ptr<const svm::MulticlassSvm> model) {
  std::lock_guard<std::mutex> lock(model_mutex_);
  model_ = std::move(model);
}

SceneStubClassifier::SceneStubClassifier(std::size_t n_scenes, const TruthLookup& truth,
                                         double flip_rate, double confidence,
                                         std::uint64_t seed)
    : n_scenes_(n_scenes), truth_(truth), flip_rate_(flip_rate), confidence_(confidence),
      seed_(seed) {
  if (n_scenes == 0) throw Error("scene stub: empty scene catalog");
  if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) throw Error("scene stub: flip_rate outside [0,1]");
  if (!(confidence >= 0.0 && confidence <= 1.0))
    throw Error("scene stub: confidence outside [0,1]");
}

ScenePrediction SceneStubClassifier::classify(const Frame& frame) const {
  std::size_t truth = truth_.scene_of(frame.index);
  std::uint64_t h = hash_combine(seed_, 0x5ce9e5u);
  h = hash_combine(h, static_cast<std::uint64_t>(frame.index));
  std::size_t scene = truth;
  if (n_scenes_ > 1 && hash_to_unit(h) < flip_rate_) {
    std::size_t shift = 1 + static_cast<std::size_t>(hash_combine(h, 1) % (n_scenes_ - 1));
    scene = (truth + shift) % n_scenes_;
  }
  return {static_cast<int>(scene), confidence_};
}

}  // namespace vap
