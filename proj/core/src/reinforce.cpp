#include "vap/reinforce.hpp"

#include <cmath>

#include "vap/log.hpp"

namespace vap::reinforce {

std::optional<GapSample> harvest(const objectfile::ObjectFile& file,
                                 const itc::FusedDecision& instant,
                                 const std::vector<double>& feature,
                                 const svm::MulticlassSvm& model, double m_near,
                                 int frame_index) {
  if (!file.confirmed()) return std::nullopt;
  std::optional<std::size_t> stable = file.stable_label();
  if (!stable) return std::nullopt;

  double margin = model.margin(feature, static_cast<int>(*stable));
  bool agree = instant.label.has_value() && *instant.label == *stable;
  if (!agree)
    return GapSample{feature, *stable, GapReason::WrongSide, margin, frame_index};
  if (std::abs(margin) < m_near)
    return GapSample{feature, *stable, GapReason::NearMargin, margin, frame_index};
  return std::nullopt;
}

double RegressionSet::accuracy(const svm::MulticlassSvm& model) const {
  if (features.empty()) return 1.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < features.size(); ++i)
    if (model.predict(features[i]) == labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(features.size());
}

RefineOutcome maybe_refine(svm::TrainingBuffer& buffer, const IdleDetector& idle,
                           std::shared_ptr<const svm::MulticlassSvm> model,
                           const ReinforceConfig& cfg, const RegressionSet& regression) {
  RefineOutcome out;
  out.model = model;
  out.buffer_size = buffer.size();
  if (idle.state() != IdleDetector::State::Idle) return out;
  if (buffer.size() < static_cast<std::size_t>(cfg.n_min_refine)) return out;

  out.attempted = true;
  out.pre_accuracy = regression.accuracy(*model);
  std::shared_ptr<const svm::MulticlassSvm> candidate;
  try {
    candidate = std::make_shared<const svm::MulticlassSvm>(
        model->refined(buffer.samples(), 1e-3));
  } catch (const svm::DegenerateModelError& e) {
    log::warn(std::string("reinforce: refinement failed, keeping model: ") + e.what());
    return out;  // buffer retained
  }
  out.post_accuracy = regression.accuracy(*candidate);
  if (out.pre_accuracy - out.post_accuracy > cfg.delta_reg) {
    log::warn("reinforce: refinement regressed the frozen set (" +
              std::to_string(out.pre_accuracy) + " -> " + std::to_string(out.post_accuracy) +
              "), rolling back");
    out.rolled_back = true;
    buffer.clear();
    return out;
  }
  out.accepted = true;
  out.model = candidate;
  buffer.clear();
  return out;
}

}  // namespace vap::reinforce
