#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "vap/types.hpp"

namespace vap::objectfile {

struct TrackerConfig {
  double q = 0.01;   // process noise intensity
  double r = 1.0;    // measurement noise variance, px^2
  double gate = 50.0;  // association gate, px
  int t_lost = 10;     // frames without a hit before a track closes
  int k_top = 10;      // size of the top-observation set
  int n_min = 5;       // stored observations before outlier rejection activates
  double d_max = 3.0;  // Mahalanobis rejection threshold
  double initial_position_var = 25.0;
  double initial_velocity_var = 100.0;
  double confirm_confidence = 0.7;  // stable-label confidence for "confirmed"
  int confirm_min_included = 5;
};

// Constant-velocity Kalman filter over (x, y, vx, vy), dt = 1 frame.
struct KalmanTrack {
  Eigen::Vector4d state = Eigen::Vector4d::Zero();
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity();
  double q = 0.01;
  double r = 1.0;
  int frames_since_hit = 0;

  Eigen::Vector2d position() const { return state.head<2>(); }
  Eigen::Vector2d velocity() const { return state.tail<2>(); }
};

KalmanTrack make_track(const Eigen::Vector2d& position, const TrackerConfig& cfg);

// state' = F state; P' = F P F^T + Q (white-acceleration Q).
KalmanTrack predict(const KalmanTrack& track);

// Position measurement update in Joseph form; keeps the covariance
// symmetric positive-definite.
KalmanTrack update(const KalmanTrack& track, const Eigen::Vector2d& measurement);

// Variance-floored diagonal Mahalanobis distance.
double mahalanobis_diag(const std::vector<double>& x, const std::vector<double>& mean,
                        const std::vector<double>& variance, double variance_floor = 1e-4);

struct Observation {
  int frame_index = 0;
  ProbabilityVector probs;
  std::vector<double> feature;
  bool included = true;
  double max_prob = 0.0;
};

// Per-track store of classification history. The stable decision is
// computed from the K included observations with the highest maximum
// class probability, which keeps the label steady through ambiguous
// stretches.
class ObjectFile {
 public:
  ObjectFile(int id, const KalmanTrack& track, const TrackerConfig& cfg);

  int id() const { return id_; }
  KalmanTrack& track() { return track_; }
  const KalmanTrack& track() const { return track_; }

  const std::vector<Observation>& observations() const { return observations_; }
  std::size_t included_count() const { return included_count_; }
  const std::vector<std::size_t>& top_set() const { return top_set_; }
  const std::vector<double>& running_mean() const { return mean_; }
  std::vector<double> running_variance() const;

  // Stores the observation; outliers (Mahalanobis beyond d_max once
  // n_min observations exist) are kept but excluded from the top set
  // and the stable statistics.
  void ingest(const Detection& detection, std::vector<double> feature);

  std::optional<std::size_t> stable_label() const { return stable_label_; }
  double stable_confidence() const { return stable_confidence_; }
  std::pair<std::optional<std::size_t>, double> stable_decision() const {
    return {stable_label_, stable_confidence_};
  }
  // elementwise mean of the top-set probability vectors
  const std::vector<double>& stable_scores() const { return stable_scores_; }
  bool confirmed() const;

  bool last_observation_included() const {
    return !observations_.empty() && observations_.back().included;
  }
  const BoundingBox& last_box() const { return last_box_; }

 private:
  void recompute_stable();

  int id_;
  KalmanTrack track_;
  TrackerConfig cfg_;
  std::vector<Observation> observations_;
  std::size_t included_count_ = 0;
  // running moments over all stored probability vectors
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::size_t moment_count_ = 0;
  std::vector<std::size_t> top_set_;
  std::optional<std::size_t> stable_label_;
  double stable_confidence_ = 0.0;
  std::vector<double> stable_scores_;
  BoundingBox last_box_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (track idx, detection idx)
  std::vector<std::size_t> unmatched_tracks;
  std::vector<std::size_t> unmatched_detections;
};

// Greedy nearest-neighbor on predicted-position-to-box-center distance;
// pairs beyond `gate` stay unmatched. A detection is never assigned to
// two tracks.
Assignment associate(const std::vector<Eigen::Vector2d>& predicted_positions,
                     const std::vector<BoundingBox>& detections, double gate);

// Frame-loop owner of all object files.
class ObjectFileStore {
 public:
  explicit ObjectFileStore(const TrackerConfig& cfg) : cfg_(cfg) {}

  const TrackerConfig& config() const { return cfg_; }
  std::vector<ObjectFile>& open_files() { return open_; }
  const std::vector<ObjectFile>& open_files() const { return open_; }
  const std::vector<ObjectFile>& closed_files() const { return closed_; }

  struct StepResult {
    // per input detection: the id of the file that consumed it
    std::vector<int> file_of_detection;
  };

  // predict -> associate -> update/ingest -> spawn -> retire.
  StepResult step(const std::vector<Detection>& detections,
                  const std::vector<std::vector<double>>& features);

 private:
  TrackerConfig cfg_;
  std::vector<ObjectFile> open_;
  std::vector<ObjectFile> closed_;
  int next_id_ = 1;
};

}  // namespace vap::objectfile
