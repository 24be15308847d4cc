#include "vap/objectfile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vap::objectfile {

namespace {

Eigen::Matrix4d transition_matrix() {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = 1.0;
  f(1, 3) = 1.0;
  return f;
}

Eigen::Matrix4d process_noise(double q) {
  // discrete white acceleration, dt = 1
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = 0.25;
  m(2, 2) = m(3, 3) = 1.0;
  m(0, 2) = m(2, 0) = 0.5;
  m(1, 3) = m(3, 1) = 0.5;
  return q * m;
}

}  // namespace

KalmanTrack make_track(const Eigen::Vector2d& position, const TrackerConfig& cfg) {
  KalmanTrack t;
  t.state.head<2>() = position;
  t.state.tail<2>().setZero();
  t.covariance = Eigen::Matrix4d::Zero();
  t.covariance(0, 0) = t.covariance(1, 1) = cfg.initial_position_var;
  t.covariance(2, 2) = t.covariance(3, 3) = cfg.initial_velocity_var;
  t.q = cfg.q;
  t.r = cfg.r;
  return t;
}

KalmanTrack predict(const KalmanTrack& track) {
  static const Eigen::Matrix4d f = transition_matrix();
  KalmanTrack out = track;
  out.state = f * track.state;
  out.covariance = f * track.covariance * f.transpose() + process_noise(track.q);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

KalmanTrack update(const KalmanTrack& track, const Eigen::Vector2d& measurement) {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  Eigen::Matrix2d rm = track.r * Eigen::Matrix2d::Identity();

  Eigen::Vector2d innovation = measurement - h * track.state;
  Eigen::Matrix2d s = h * track.covariance * h.transpose() + rm;
  Eigen::Matrix<double, 4, 2> k = track.covariance * h.transpose() * s.inverse();

  KalmanTrack out = track;
  out.state = track.state + k * innovation;
  Eigen::Matrix4d ikh = Eigen::Matrix4d::Identity() - k * h;
  out.covariance = ikh * track.covariance * ikh.transpose() + k * rm * k.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  out.frames_since_hit = 0;
  return out;
}

double mahalanobis_diag(const std::vector<double>& x, const std::vector<double>& mean,
                        const std::vector<double>& variance, double variance_floor) {
  if (x.size() != mean.size() || x.size() != variance.size())
    throw Error("mahalanobis: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - mean[i];
    sum += d * d / std::max(variance[i], variance_floor);
  }
  return std::sqrt(sum);
}

ObjectFile::ObjectFile(int id, const KalmanTrack& track, const TrackerConfig& cfg)
    : id_(id), track_(track), cfg_(cfg) {}

std::vector<double> ObjectFile::running_variance() const {
  std::vector<double> var(m2_.size(), 0.0);
  if (moment_count_ > 0)
    for (std::size_t i = 0; i < m2_.size(); ++i)
      var[i] = m2_[i] / static_cast<double>(moment_count_);
  return var;
}

void ObjectFile::ingest(const Detection& detection, std::vector<double> feature) {
  detection.probs.validate();

  bool included = true;
  if (moment_count_ > 0 && observations_.size() >= static_cast<std::size_t>(cfg_.n_min)) {
    double d = mahalanobis_diag(detection.probs.values, mean_, running_variance());
    included = !(d > cfg_.d_max);
  }

  Observation obs;
  obs.frame_index = detection.frame_index;
  obs.probs = detection.probs;
  obs.feature = std::move(feature);
  obs.included = included;
  obs.max_prob = detection.probs.max_value();
  observations_.push_back(std::move(obs));
  if (included) ++included_count_;
  last_box_ = detection.box;

  // Welford moments over all stored vectors
  if (mean_.empty()) {
    mean_.assign(detection.probs.size(), 0.0);
    m2_.assign(detection.probs.size(), 0.0);
  }
  ++moment_count_;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    double v = detection.probs[i];
    double delta = v - mean_[i];
    mean_[i] += delta / static_cast<double>(moment_count_);
    m2_[i] += delta * (v - mean_[i]);
  }

  recompute_stable();
}

void ObjectFile::recompute_stable() {
  top_set_.clear();
  for (std::size_t i = 0; i < observations_.size(); ++i)
    if (observations_[i].included) top_set_.push_back(i);
  std::stable_sort(top_set_.begin(), top_set_.end(), [this](std::size_t a, std::size_t b) {
    if (observations_[a].max_prob != observations_[b].max_prob)
      return observations_[a].max_prob > observations_[b].max_prob;
    return observations_[a].frame_index < observations_[b].frame_index;
  });
  if (top_set_.size() > static_cast<std::size_t>(cfg_.k_top))
    top_set_.resize(static_cast<std::size_t>(cfg_.k_top));

  if (top_set_.empty()) {
    stable_label_.reset();
    stable_confidence_ = 0.0;
    stable_scores_.clear();
    return;
  }
  std::vector<double> mean(observations_[top_set_[0]].probs.size(), 0.0);
  for (std::size_t idx : top_set_)
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += observations_[idx].probs[c];
  for (double& v : mean) v /= static_cast<double>(top_set_.size());
  std::size_t best = 0;
  for (std::size_t c = 1; c < mean.size(); ++c)
    if (mean[c] > mean[best]) best = c;
  stable_label_ = best;
  stable_confidence_ = mean[best];
  stable_scores_ = std::move(mean);
}

bool ObjectFile::confirmed() const {
  return stable_label_.has_value() && stable_confidence_ >= cfg_.confirm_confidence &&
         included_count_ >= static_cast<std::size_t>(cfg_.confirm_min_included);
}

Assignment associate(const std::vector<Eigen::Vector2d>& predicted_positions,
                     const std::vector<BoundingBox>& detections, double gate) {
  if (!(gate > 0.0)) throw Error("associate: gate must be > 0");
  Assignment out;
  std::vector<bool> track_used(predicted_positions.size(), false);
  std::vector<bool> det_used(detections.size(), false);

  while (true) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bt = 0, bd = 0;
    bool found = false;
    for (std::size_t t = 0; t < predicted_positions.size(); ++t) {
      if (track_used[t]) continue;
      for (std::size_t d = 0; d < detections.size(); ++d) {
        if (det_used[d]) continue;
        double dx = predicted_positions[t].x() - detections[d].cx();
        double dy = predicted_positions[t].y() - detections[d].cy();
        double dist = std::sqrt(dx * dx + dy * dy);
        if (dist <= gate && dist < best) {
          best = dist;
          bt = t;
          bd = d;
          found = true;
        }
      }
    }
    if (!found) break;
    track_used[bt] = true;
    det_used[bd] = true;
    out.matches.emplace_back(bt, bd);
  }
  for (std::size_t t = 0; t < predicted_positions.size(); ++t)
    if (!track_used[t]) out.unmatched_tracks.push_back(t);
  for (std::size_t d = 0; d < detections.size(); ++d)
    if (!det_used[d]) out.unmatched_detections.push_back(d);
  return out;
}

ObjectFileStore::StepResult ObjectFileStore::step(
    const std::vector<Detection>& detections, const std::vector<std::vector<double>>& features) {
  if (detections.size() != features.size())
    throw Error("objectfile store: detections/features size mismatch");

  StepResult result;
  result.file_of_detection.assign(detections.size(), -1);

  std::vector<Eigen::Vector2d> predicted;
  predicted.reserve(open_.size());
  for (auto& file : open_) {
    file.track() = predict(file.track());
    predicted.push_back(file.track().position());
  }

  std::vector<BoundingBox> boxes;
  boxes.reserve(detections.size());
  for (const auto& d : detections) boxes.push_back(d.box);
  Assignment assignment = associate(predicted, boxes, cfg_.gate);

  for (auto [t, d] : assignment.matches) {
    ObjectFile& file = open_[t];
    file.track() = update(file.track(), {detections[d].box.cx(), detections[d].box.cy()});
    file.ingest(detections[d], features[d]);
    result.file_of_detection[d] = file.id();
  }
  for (std::size_t t : assignment.unmatched_tracks) ++open_[t].track().frames_since_hit;

  for (std::size_t d : assignment.unmatched_detections) {
    KalmanTrack track = make_track({detections[d].box.cx(), detections[d].box.cy()}, cfg_);
    ObjectFile file(next_id_++, track, cfg_);
    file.ingest(detections[d], features[d]);
    result.file_of_detection[d] = file.id();
    open_.push_back(std::move(file));
  }

  // retire tracks unmatched for more than t_lost frames
  for (std::size_t i = open_.size(); i-- > 0;) {
    if (open_[i].track().frames_since_hit > cfg_.t_lost) {
      closed_.push_back(std::move(open_[i]));
      open_.erase(open_.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return result;
}

}  // namespace vap::objectfile

