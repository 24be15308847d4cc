#include <fstream>

#include <json.hpp>

#include "vap/pipeline.hpp"

namespace vap::pipeline {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw Error("config: " + key + " " + what);
}

}  // namespace

void PipelineConfig::validate() const {
  require(attention.alpha_bg > 0.0 && attention.alpha_bg <= 1.0, "attention.alpha_bg",
          "must lie in (0,1]");
  require(attention.k_bg > 0.0, "attention.k_bg", "must be > 0");
  require(attention.tau_diff > 0.0, "attention.tau_diff", "must be > 0");
  require(attention.a_min > 0, "attention.a_min", "must be > 0");
  require(attention.n_saccade >= 0, "attention.n_saccade", "must be >= 0");
  require(attention.saccade_min_size >= 2, "attention.saccade_min_size", "must be >= 2");
  require(attention.saccade_max_size >= attention.saccade_min_size,
          "attention.saccade_max_size", "must be >= saccade_min_size");
  require(attention.iou_threshold > 0.0 && attention.iou_threshold < 1.0,
          "attention.iou_threshold", "must lie in (0,1)");
  require(attention.max_proposals > 0, "attention.max_proposals", "must be > 0");

  require(fusion.a > 0.0, "fusion.a", "must be > 0");
  require(fusion.sigma > 0.0, "fusion.sigma", "must be > 0");
  require(fusion.b > 0.0, "fusion.b", "must be > 0");
  require(fusion.c > 0.0 && fusion.c < 1.0, "fusion.c", "must lie in (0,1)");
  require(fusion.decision_threshold > 0.0 && fusion.decision_threshold < 1.0,
          "fusion.decision_threshold", "must lie in (0,1)");

  require(tracker.q > 0.0, "tracker.q", "must be > 0");
  require(tracker.r > 0.0, "tracker.r", "must be > 0");
  require(tracker.gate > 0.0, "tracker.gate", "must be > 0");
  require(tracker.t_lost >= 0, "tracker.t_lost", "must be >= 0");
  require(tracker.k_top > 0, "tracker.k_top", "must be > 0");
  require(tracker.n_min >= 0, "tracker.n_min", "must be >= 0");
  require(tracker.d_max > 0.0, "tracker.d_max", "must be > 0");
  require(tracker.confirm_confidence > 0.0 && tracker.confirm_confidence <= 1.0,
          "tracker.confirm_confidence", "must lie in (0,1]");
  require(tracker.confirm_min_included >= 1, "tracker.confirm_min_included", "must be >= 1");

  require(reinforce.m_near >= 0.0, "reinforce.m_near", "must be >= 0");
  require(reinforce.n_min_refine >= 1, "reinforce.n_min_refine", "must be >= 1");
  require(reinforce.idle_window >= 1, "reinforce.idle_window", "must be >= 1");
  require(reinforce.delta_reg >= 0.0 && reinforce.delta_reg <= 1.0, "reinforce.delta_reg",
          "must lie in [0,1]");
  require(reinforce.buffer_capacity >= 1, "reinforce.buffer_capacity", "must be >= 1");

  require(context.alpha_mix >= 0.0 && context.alpha_mix <= 1.0, "context.alpha_mix",
          "must lie in [0,1]");
  require(context.eps_s > 0.0, "context.eps_s", "must be > 0");
  require(context.eps_o > 0.0, "context.eps_o", "must be > 0");

  require(classifier.train_patches_per_category >= 2, "classifier.train_patches_per_category",
          "must be >= 2");
  require(classifier.kernel == "linear" || classifier.kernel == "rbf", "classifier.kernel",
          "must be linear or rbf");
  require(classifier.rbf_gamma > 0.0, "classifier.rbf_gamma", "must be > 0");
  require(classifier.svm_c > 0.0, "classifier.svm_c", "must be > 0");

  require(scene_stub.flip_rate >= 0.0 && scene_stub.flip_rate <= 1.0, "scene_stub.flip_rate",
          "must lie in [0,1]");
  require(scene_stub.confidence >= 0.0 && scene_stub.confidence <= 1.0,
          "scene_stub.confidence", "must lie in [0,1]");

  require(gist.train_patches_per_category >= 2, "gist.train_patches_per_category",
          "must be >= 2");
  require(gist.svm_c > 0.0, "gist.svm_c", "must be > 0");

  require(saliency.jitter >= 0.0, "saliency.jitter", "must be >= 0");
  require(instance_match_iou > 0.0 && instance_match_iou < 1.0, "instance_match_iou",
          "must lie in (0,1)");
}

namespace {

ClassifierKind parse_classifier_kind(const std::string& s) {
  if (s == "oracle") return ClassifierKind::Oracle;
  if (s == "confusable") return ClassifierKind::Confusable;
  if (s == "feature_stub") return ClassifierKind::FeatureStub;
  throw Error("config: classifier.kind must be oracle|confusable|feature_stub, got '" + s + "'");
}

std::string classifier_kind_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::Oracle: return "oracle";
    case ClassifierKind::Confusable: return "confusable";
    case ClassifierKind::FeatureStub: return "feature_stub";
  }
  return "oracle";
}

SaliencyKind parse_saliency_kind(const std::string& s) {
  if (s == "none") return SaliencyKind::None;
  if (s == "truth") return SaliencyKind::Truth;
  if (s == "contrast") return SaliencyKind::Contrast;
  throw Error("config: saliency.kind must be none|truth|contrast, got '" + s + "'");
}

std::string saliency_kind_name(SaliencyKind k) {
  switch (k) {
    case SaliencyKind::None: return "none";
    case SaliencyKind::Truth: return "truth";
    case SaliencyKind::Contrast: return "contrast";
  }
  return "none";
}

}  // namespace

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("config: '" + path + "' is not valid JSON: " + std::string(e.what()));
  }

  PipelineConfig c;
  try {
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("attention")) {
      const auto& a = j["attention"];
      c.attention.alpha_bg = a.value("alpha_bg", c.attention.alpha_bg);
      c.attention.k_bg = a.value("k_bg", c.attention.k_bg);
      c.attention.tau_diff = a.value("tau_diff", c.attention.tau_diff);
      c.attention.a_min = a.value("a_min", c.attention.a_min);
      c.attention.n_saccade = a.value("n_saccade", c.attention.n_saccade);
      c.attention.saccade_min_size = a.value("saccade_min_size", c.attention.saccade_min_size);
      c.attention.saccade_max_size = a.value("saccade_max_size", c.attention.saccade_max_size);
      c.attention.saccade_retries = a.value("saccade_retries", c.attention.saccade_retries);
      c.attention.iou_threshold = a.value("iou_threshold", c.attention.iou_threshold);
      c.attention.max_proposals = a.value("max_proposals", c.attention.max_proposals);
    }
    if (j.contains("fusion")) {
      const auto& f = j["fusion"];
      c.fusion.a = f.value("a", c.fusion.a);
      c.fusion.mu = f.value("mu", c.fusion.mu);
      c.fusion.sigma = f.value("sigma", c.fusion.sigma);
      c.fusion.b = f.value("b", c.fusion.b);
      c.fusion.c = f.value("c", c.fusion.c);
      c.fusion.decision_threshold = f.value("decision_threshold", c.fusion.decision_threshold);
    }
    if (j.contains("tracker")) {
      const auto& t = j["tracker"];
      c.tracker.q = t.value("q", c.tracker.q);
      c.tracker.r = t.value("r", c.tracker.r);
      c.tracker.gate = t.value("gate", c.tracker.gate);
      c.tracker.t_lost = t.value("t_lost", c.tracker.t_lost);
      c.tracker.k_top = t.value("k_top", c.tracker.k_top);
      c.tracker.n_min = t.value("n_min", c.tracker.n_min);
      c.tracker.d_max = t.value("d_max", c.tracker.d_max);
      c.tracker.initial_position_var = t.value("initial_position_var", c.tracker.initial_position_var);
      c.tracker.initial_velocity_var = t.value("initial_velocity_var", c.tracker.initial_velocity_var);
      c.tracker.confirm_confidence = t.value("confirm_confidence", c.tracker.confirm_confidence);
      c.tracker.confirm_min_included = t.value("confirm_min_included", c.tracker.confirm_min_included);
    }
    if (j.contains("reinforce")) {
      const auto& r = j["reinforce"];
      c.reinforce.enabled = r.value("enabled", c.reinforce.enabled);
      c.reinforce.m_near = r.value("m_near", c.reinforce.m_near);
      c.reinforce.n_min_refine = r.value("n_min_refine", c.reinforce.n_min_refine);
      c.reinforce.idle_window = r.value("idle_window", c.reinforce.idle_window);
      c.reinforce.delta_reg = r.value("delta_reg", c.reinforce.delta_reg);
      c.reinforce.buffer_capacity = r.value("buffer_capacity", c.reinforce.buffer_capacity);
    }
    if (j.contains("context")) {
      const auto& x = j["context"];
      c.context.alpha_mix = x.value("alpha_mix", c.context.alpha_mix);
      c.context.eps_s = x.value("eps_s", c.context.eps_s);
      c.context.eps_o = x.value("eps_o", c.context.eps_o);
      c.context.bootstrap_path = x.value("bootstrap_path", c.context.bootstrap_path);
    }
    if (j.contains("classifier")) {
      const auto& k = j["classifier"];
      c.classifier.kind = parse_classifier_kind(k.value("kind", std::string("oracle")));
      c.classifier.train_categories =
          k.value("train_categories", c.classifier.train_categories);
      c.classifier.train_patches_per_category =
          k.value("train_patches_per_category", c.classifier.train_patches_per_category);
      c.classifier.kernel = k.value("kernel", c.classifier.kernel);
      c.classifier.rbf_gamma = k.value("rbf_gamma", c.classifier.rbf_gamma);
      c.classifier.svm_c = k.value("svm_c", c.classifier.svm_c);
    }
    if (j.contains("scene_stub")) {
      const auto& s = j["scene_stub"];
      c.scene_stub.flip_rate = s.value("flip_rate", c.scene_stub.flip_rate);
      c.scene_stub.confidence = s.value("confidence", c.scene_stub.confidence);
    }
    if (j.contains("gist")) {
      const auto& g = j["gist"];
      c.gist.enabled = g.value("enabled", c.gist.enabled);
      c.gist.train_categories = g.value("train_categories", c.gist.train_categories);
      c.gist.train_patches_per_category =
          g.value("train_patches_per_category", c.gist.train_patches_per_category);
      c.gist.svm_c = g.value("svm_c", c.gist.svm_c);
    }
    if (j.contains("saliency")) {
      const auto& s = j["saliency"];
      c.saliency.kind = parse_saliency_kind(s.value("kind", std::string("none")));
      c.saliency.jitter = s.value("jitter", c.saliency.jitter);
    }
    if (j.contains("pathways")) {
      const auto& p = j["pathways"];
      c.pathways.scene_context = p.value("scene_context", c.pathways.scene_context);
      c.pathways.gist = p.value("gist", c.pathways.gist);
      c.pathways.object_files = p.value("object_files", c.pathways.object_files);
      c.pathways.reinforcement = p.value("reinforcement", c.pathways.reinforcement);
    }
    c.instance_match_iou = j.value("instance_match_iou", c.instance_match_iou);
  } catch (const json::exception& e) {
    throw Error("config: malformed '" + path + "': " + std::string(e.what()));
  }
  c.validate();
  return c;
}

void save_config(const PipelineConfig& c, const std::string& path) {
  json j;
  j["seed"] = c.seed;
  j["attention"] = {{"alpha_bg", c.attention.alpha_bg},
                    {"k_bg", c.attention.k_bg},
                    {"tau_diff", c.attention.tau_diff},
                    {"a_min", c.attention.a_min},
                    {"n_saccade", c.attention.n_saccade},
                    {"saccade_min_size", c.attention.saccade_min_size},
                    {"saccade_max_size", c.attention.saccade_max_size},
                    {"saccade_retries", c.attention.saccade_retries},
                    {"iou_threshold", c.attention.iou_threshold},
                    {"max_proposals", c.attention.max_proposals}};
  j["fusion"] = {{"a", c.fusion.a},
                 {"mu", c.fusion.mu},
                 {"sigma", c.fusion.sigma},
                 {"b", c.fusion.b},
                 {"c", c.fusion.c},
                 {"decision_threshold", c.fusion.decision_threshold}};
  j["tracker"] = {{"q", c.tracker.q},
                  {"r", c.tracker.r},
                  {"gate", c.tracker.gate},
                  {"t_lost", c.tracker.t_lost},
                  {"k_top", c.tracker.k_top},
                  {"n_min", c.tracker.n_min},
                  {"d_max", c.tracker.d_max},
                  {"initial_position_var", c.tracker.initial_position_var},
                  {"initial_velocity_var", c.tracker.initial_velocity_var},
                  {"confirm_confidence", c.tracker.confirm_confidence},
                  {"confirm_min_included", c.tracker.confirm_min_included}};
  j["reinforce"] = {{"enabled", c.reinforce.enabled},
                    {"m_near", c.reinforce.m_near},
                    {"n_min_refine", c.reinforce.n_min_refine},
                    {"idle_window", c.reinforce.idle_window},
                    {"delta_reg", c.reinforce.delta_reg},
                    {"buffer_capacity", c.reinforce.buffer_capacity}};
  j["context"] = {{"alpha_mix", c.context.alpha_mix},
                  {"eps_s", c.context.eps_s},
                  {"eps_o", c.context.eps_o},
                  {"bootstrap_path", c.context.bootstrap_path}};
  j["classifier"] = {{"kind", classifier_kind_name(c.classifier.kind)},
                     {"train_categories", c.classifier.train_categories},
                     {"train_patches_per_category", c.classifier.train_patches_per_category},
                     {"kernel", c.classifier.kernel},
                     {"rbf_gamma", c.classifier.rbf_gamma},
                     {"svm_c", c.classifier.svm_c}};
  j["scene_stub"] = {{"flip_rate", c.scene_stub.flip_rate},
                     {"confidence", c.scene_stub.confidence}};
  j["gist"] = {{"enabled", c.gist.enabled},
               {"train_categories", c.gist.train_categories},
               {"train_patches_per_category", c.gist.train_patches_per_category},
               {"svm_c", c.gist.svm_c}};
  j["saliency"] = {{"kind", saliency_kind_name(c.saliency.kind)}, {"jitter", c.saliency.jitter}};
  j["pathways"] = {{"scene_context", c.pathways.scene_context},
                   {"gist", c.pathways.gist},
                   {"object_files", c.pathways.object_files},
                   {"reinforcement", c.pathways.reinforcement}};
  j["instance_match_iou"] = c.instance_match_iou;

  std::ofstream out(path);
  if (!out) throw Error("config: cannot write '" + path + "'");
  out << j.dump(1) << "\n";
  if (!out) throw Error("config: write to '" + path + "' failed");
}

}  // namespace vap::pipeline
