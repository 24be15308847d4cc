#pragma once

#include <memory>
#include <vector>

#include "vap/rng.hpp"
#include "vap/types.hpp"

namespace vap::attention {

enum class ProposalSource { Motion, Saliency, Random };

struct Proposal {
  BoundingBox box;
  ProposalSource source = ProposalSource::Motion;
};

struct ProposalSet {
  std::vector<Proposal> proposals;
};

struct AttentionConfig {
  double alpha_bg = 0.05;   // background learning rate, in (0,1)
  double k_bg = 3.0;        // foreground threshold in stddev units
  double tau_diff = 0.05;   // adjacent-frame absolute-difference threshold
  int a_min = 25;           // minimum connected-component area, pixels
  int n_saccade = 3;        // random boxes per frame
  int saccade_min_size = 12;
  int saccade_max_size = 32;
  int saccade_retries = 20;  // rejection budget per box
  double iou_threshold = 0.5;
  int max_proposals = 64;
};

// Per-pixel running mean/variance of frame intensity.
class BackgroundModel {
 public:
  BackgroundModel(int width, int height, double alpha_bg = 0.05, double k_bg = 3.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double alpha() const { return alpha_; }
  double k() const { return k_; }
  int updates() const { return updates_; }

  double mean_at(int x, int y) const { return mean_[idx(x, y)]; }
  double variance_at(int x, int y) const { return var_[idx(x, y)]; }

  // mean' = (1-a)*mean + a*pixel; variance updated on the squared
  // deviation from the pre-update mean, floored at 1e-6.
  // Throws Error on dimension mismatch.
  void update(const Frame& frame);

  // |pixel - mean| > k*stddev per pixel. Row-major w*h mask.
  std::vector<unsigned char> foreground_mask(const Frame& frame) const;

  static constexpr double kVarianceFloor = 1e-6;

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_, height_;
  double alpha_, k_;
  int updates_ = 0;
  std::vector<double> mean_;
  std::vector<double> var_;
};

// Foreground statistics AND five-frame differencing, connected
// components above `a_min` become boxes. Returns empty while fewer
// than 5 frames are buffered (warm-up).
std::vector<BoundingBox> detect_motion(const BackgroundModel& model,
                                       const std::vector<Frame>& recent,
                                       const AttentionConfig& cfg);

// Boxes sampled uniformly in the complement of the existing boxes,
// bounded rejection; may return fewer than n_saccade.
std::vector<BoundingBox> random_saccades(int frame_w, int frame_h,
                                         const std::vector<BoundingBox>& motion_boxes,
                                         const std::vector<BoundingBox>& saliency_boxes,
                                         const AttentionConfig& cfg, Rng& rng);

// Greedy NMS: source priority Motion > Saliency > Random, then larger
// area first; survivors never overlap above iou_threshold; capped at
// max_proposals.
ProposalSet merge_proposals(const std::vector<BoundingBox>& motion,
                            const std::vector<BoundingBox>& saliency,
                            const std::vector<BoundingBox>& random_boxes,
                            const AttentionConfig& cfg);

// Pluggable stand-in for a learned region-proposal source.
class SaliencySource {
 public:
  virtual ~SaliencySource() = default;
  virtual std::vector<BoundingBox> propose(const Frame& frame) = 0;
};

// Block-variance peaks: splits the frame into fixed-size blocks and
// proposes boxes around blocks whose intensity variance is high.
class LocalContrastSaliency : public SaliencySource {
 public:
  struct Config {
    int block = 16;
    double min_variance = 2e-3;
    int top_k = 4;
  };
  explicit LocalContrastSaliency(Config cfg) : cfg_(cfg) {}
  std::vector<BoundingBox> propose(const Frame& frame) override;

 private:
  Config cfg_;
};

}  // namespace vap::attention
