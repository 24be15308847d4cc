#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "vap/classifier.hpp"
#include "vap/features.hpp"
#include "vap/svm.hpp"

namespace vap {

// Zero-noise stand-in: full confidence (scaled by visibility) on the
// ground-truth category, all zeros off-object.
class OracleClassifier : public BottomUpClassifier {
 public:
  OracleClassifier(const CategoryCatalog& catalog, const TruthLookup& truth);
  ProbabilityVector classify(const Region& region) const override;

 private:
  std::size_t n_categories_;
  const TruthLookup& truth_;
};

// Splits confidence between a category and a designated partner.
// `ambiguity` is the mass moved to the partner; `noise` adds a
// zero-mean jitter hashed from (seed, frame, box) so exact ties break
// randomly but reproducibly. Entries with a view_tag apply to that
// view only; an empty view_tag matches any view.
struct ConfusionEntry {
  std::size_t category = 0;
  std::string view_tag;
  std::size_t partner = 0;
  double ambiguity = 0.0;  // in [0,1]
  double noise = 0.0;
};

class ConfusablePairClassifier : public BottomUpClassifier {
 public:
  ConfusablePairClassifier(const CategoryCatalog& catalog, const TruthLookup& truth,
                           std::vector<ConfusionEntry> entries, std::uint64_t seed);
  ProbabilityVector classify(const Region& region) const override;

 private:
  const ConfusionEntry* find_entry(std::size_t category, const std::string& view_tag) const;

  std::size_t n_categories_;
  const TruthLookup& truth_;
  std::vector<ConfusionEntry> entries_;
  std::uint64_t seed_;
};

// Trainable stub: linear scoring of handcrafted features through a
// one-vs-rest SVM ensemble. This is the classifier the reinforcement
// loop refines; the model swap is atomic so readers see old or new,
// never partial.
class FeatureStubClassifier : public BottomUpClassifier {
 public:
  FeatureStubClassifier(const CategoryCatalog& catalog, features::FeatureConfig feature_cfg,
                        std::shared_ptr<const svm::MulticlassSvm> model);

  ProbabilityVector classify(const Region& region) const override;
  std::vector<double> extract(const Region& region) const;
  // scoring path for callers that already extracted the features
  ProbabilityVector classify_from(const std::vector<double>& features) const;
  const features::FeatureConfig& feature_config() const { return feature_cfg_; }

  std::shared_ptr<const svm::MulticlassSvm> model() const;
  void publish(std::shared_ptr<const svm::MulticlassSvm> model);

 private:
  std::size_t n_categories_;
  features::FeatureConfig feature_cfg_;
  mutable std::mutex model_mutex_;
  std::shared_ptr<const svm::MulticlassSvm> model_;
};

// Scene classifier keyed to scenario ground truth with a configurable
// flip rate; flips are hashed per frame for purity.
class SceneStubClassifier : public SceneClassifier {
 public:
  SceneStubClassifier(std::size_t n_scenes, const TruthLookup& truth, double flip_rate,
                      double confidence, std::uint64_t seed);
  ScenePrediction classify(const Frame& frame) const override;

 private:
  std::size_t n_scenes_;
  const TruthLookup& truth_;
  double flip_rate_;
  double confidence_;
  std::uint64_t seed_;
};

}  // namespace vap
