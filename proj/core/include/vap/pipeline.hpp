#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vap/attention.hpp"
#include "vap/classifiers.hpp"
#include "vap/context.hpp"
#include "vap/gist.hpp"
#include "vap/itc.hpp"
#include "vap/metrics.hpp"
#include "vap/objectfile.hpp"
#include "vap/reinforce.hpp"
#include "vap/scenario.hpp"
#include "vap/svm.hpp"

namespace vap::pipeline {

enum class ClassifierKind { Oracle, Confusable, FeatureStub };
enum class SaliencyKind { None, Truth, Contrast };

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::Oracle;
  // feature-stub training (rendered canonical-view crops)
  std::vector<std::string> train_categories;  // empty = every catalog category
  int train_patches_per_category = 20;
  std::string kernel = "linear";  // linear | rbf
  double rbf_gamma = 0.5;
  double svm_c = 10.0;
};

struct SceneStubConfig {
  double flip_rate = 0.0;
  double confidence = 0.75;
};

struct GistPathwayConfig {
  bool enabled = true;
  std::vector<std::string> train_categories;  // empty = every catalog category
  int train_patches_per_category = 6;
  double svm_c = 10.0;
};

struct ContextConfig {
  double alpha_mix = 0.7;
  double eps_s = 1.0;
  double eps_o = 1.0;
  std::string bootstrap_path;  // optional saved context state
};

struct SaliencyConfig {
  SaliencyKind kind = SaliencyKind::None;
  double jitter = 2.0;  // px, truth-perturbed source
};

// Ablation switches; everything off reduces per-proposal decisions to
// the bottom-up argmax exactly.
struct PathwayToggles {
  bool scene_context = true;
  bool gist = true;
  bool object_files = true;
  bool reinforcement = true;
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  attention::AttentionConfig attention;
  itc::FusionParams fusion;
  objectfile::TrackerConfig tracker;
  reinforce::ReinforceConfig reinforce;
  ContextConfig context;
  ClassifierConfig classifier;
  SceneStubConfig scene_stub;
  GistPathwayConfig gist;
  SaliencyConfig saliency;
  PathwayToggles pathways;
  double instance_match_iou = 0.3;

  // Throws Error naming the offending key.
  void validate() const;
};

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& cfg, const std::string& path);

struct ProposalOutcome {
  attention::Proposal proposal;
  ProbabilityVector bottom_up;
  itc::GistPrediction gist;
  itc::FusedDecision fused;
  int file_id = -1;  // object file that consumed this proposal, -1 otherwise
};

struct TrackSnapshot {
  int file_id = 0;
  BoundingBox box;
  std::optional<std::size_t> stable_label;
  double stable_confidence = 0.0;
  bool included = false;  // last observation passed the Mahalanobis filter
};

struct RefinementRecord {
  int frame_index = 0;
  std::size_t buffer_size = 0;
  double pre_accuracy = 0.0;
  double post_accuracy = 0.0;
  bool accepted = false;
  bool rolled_back = false;
};

struct FrameResult {
  int frame_index = -1;
  ScenePrediction scene;
  std::vector<ProposalOutcome> proposals;
  std::vector<TrackSnapshot> tracks;
  std::vector<metrics::InstanceRecord> instances;
  std::optional<RefinementRecord> refinement;
};

// Holds the state that persists across scenario clips: context
// matrices, the trainable classifier ensemble, and the gist pathway
// models. Per-clip state (background model, tracker, idle detector)
// resets at each run_scenario call.
class Engine {
 public:
  Engine(PipelineConfig config, const CategoryCatalog& catalog,
         const context::SceneCatalog& scenes,
         std::optional<context::ContextState> bootstrap = std::nullopt);

  std::vector<FrameResult> run_scenario(const scenario::ScenarioSpec& spec);

  const PipelineConfig& config() const { return config_; }
  const CategoryCatalog& catalog() const { return *catalog_; }
  const context::ContextState& context_state() const { return context_; }
  const reinforce::RegressionSet& regression_set() const { return regression_; }
  std::shared_ptr<const svm::MulticlassSvm> stub_model() const;
  bool has_stub() const { return stub_ != nullptr; }
  void save_model(const std::string& path) const;

 private:
  struct ClipState;
  FrameResult process_frame(ClipState& clip, const Frame& frame);
  void train_feature_stub();
  void train_gist_svm();

  PipelineConfig config_;
  const CategoryCatalog* catalog_;
  context::SceneCatalog scenes_;
  context::ContextState context_;
  features::FeatureConfig feature_cfg_;
  std::shared_ptr<FeatureStubClassifier> stub_;
  reinforce::RegressionSet regression_;
  std::optional<gist::GaborBank> gist_bank_;
  std::optional<svm::SvmModel> gist_svm_;
  svm::TrainingBuffer buffer_;
};

struct RunOptions {
  std::string out_dir;  // empty: no artifacts written
  bool dump_frames = false;
};

struct RunSummary {
  std::string name;
  std::vector<metrics::InstanceRecord> instances;
  std::vector<RefinementRecord> refinements;
  double final_error = 0.0;
  double regression_pre = 1.0;   // stub accuracy on the frozen set before the run
  double regression_post = 1.0;  // and after
};

// Runs a scenario suite through one engine, writing the full artifact
// set (detections.csv, tracks.csv, cumulative_error.csv, metrics.csv,
// map.csv, refinements.csv, context state, model dump) when out_dir is
// set.
RunSummary run(const PipelineConfig& config, const std::vector<scenario::ScenarioSpec>& suite,
               const RunOptions& options);

// Four-way ablation over the same suite and seed: bottom-up only,
// +context fusion, +object files, full. Emits a joined
// cumulative-error CSV when out_dir is set. `subset` filters the
// configurations by name; empty runs all four.
std::vector<RunSummary> ablate(const PipelineConfig& config,
                               const std::vector<scenario::ScenarioSpec>& suite,
                               const RunOptions& options,
                               const std::vector<std::string>& subset = {});

namespace presets {

// Engine configuration matched to the scenario preset of the same
// name (tiny | ambiguity | occlusion | viewpoint).
PipelineConfig config_for(const std::string& preset);

}  // namespace presets

}  // namespace vap::pipeline
