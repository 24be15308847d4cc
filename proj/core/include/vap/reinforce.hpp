#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vap/itc.hpp"
#include "vap/objectfile.hpp"
#include "vap/svm.hpp"

namespace vap::reinforce {

struct ReinforceConfig {
  bool enabled = true;
  double m_near = 0.5;       // |margin| below this harvests a NearMargin sample
  int n_min_refine = 20;     // buffer size needed before a refit
  int idle_window = 30;      // motionless frames before the scene counts as idle
  double delta_reg = 0.05;   // max tolerated accuracy drop on the regression set
  std::size_t buffer_capacity = 256;
};

enum class GapReason { WrongSide, NearMargin };

// A prediction/feedback gap worth learning from. The pseudo label is
// the object-file stable label, not ground truth: the system labels
// its own stream.
struct GapSample {
  std::vector<double> feature;
  std::size_t pseudo_label = 0;
  GapReason reason = GapReason::WrongSide;
  double margin = 0.0;  // one-vs-rest decision value under the pseudo label's model
  int frame_index = 0;
};

// Idle once `window` consecutive frames produced zero motion proposals.
class IdleDetector {
 public:
  enum class State { Active, Idle };
  explicit IdleDetector(int window) : window_(window) {}

  void observe(bool has_motion) {
    quiet_streak_ = has_motion ? 0 : quiet_streak_ + 1;
  }
  State state() const { return quiet_streak_ >= window_ ? State::Idle : State::Active; }
  int quiet_streak() const { return quiet_streak_; }

 private:
  int window_;
  int quiet_streak_ = 0;
};

// Compares the instantaneous fused decision with the object-file's
// stable description. Only confirmed files yield samples, which bounds
// pseudo-label noise by the confirmation threshold.
std::optional<GapSample> harvest(const objectfile::ObjectFile& file,
                                 const itc::FusedDecision& instant,
                                 const std::vector<double>& feature,
                                 const svm::MulticlassSvm& model, double m_near,
                                 int frame_index);

// Frozen original-distribution samples; refinements that regress
// accuracy on this set beyond delta_reg are rolled back.
struct RegressionSet {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;

  double accuracy(const svm::MulticlassSvm& model) const;
};

struct RefineOutcome {
  bool attempted = false;
  bool accepted = false;
  bool rolled_back = false;
  double pre_accuracy = 0.0;
  double post_accuracy = 0.0;
  std::size_t buffer_size = 0;
  std::shared_ptr<const svm::MulticlassSvm> model;  // the model to use from now on
};

// Refits when (and only when) the scene is idle and the buffer is full
// enough. On a degenerate refit the buffer is retained and the old
// model returned; on a regression-guard violation the refit is rolled
// back with a warning.
RefineOutcome maybe_refine(svm::TrainingBuffer& buffer, const IdleDetector& idle,
                           std::shared_ptr<const svm::MulticlassSvm> model,
                           const ReinforceConfig& cfg, const RegressionSet& regression);

}  // namespace vap::reinforce
