#include "vap/itc.hpp"

#include <algorithm>
#include <cmath>

namespace vap::itc {

void FusionParams::validate() const {
  if (!(a > 0.0)) throw Error("fusion: a must be > 0");
  if (!(sigma > 0.0)) throw Error("fusion: sigma must be > 0");
  if (!(b > 0.0)) throw Error("fusion: b must be > 0");
  if (!(c > 0.0 && c < 1.0)) throw Error("fusion: c must lie in (0,1)");
  if (!(decision_threshold > 0.0 && decision_threshold < 1.0))
    throw Error("fusion: decision_threshold must lie in (0,1)");
}

double r_magnitude(double p_bottom_up, const FusionParams& params) {
  double d = p_bottom_up - params.mu;
  return params.a * std::exp(-(d * d) / (2.0 * params.sigma * params.sigma));
}

double r_sign(double p_object_given_context, const FusionParams& params) {
  return std::tanh(params.b * (p_object_given_context - params.c));
}

double correction(double p_context_conf, double p_bottom_up, double p_object_given_context,
                  const FusionParams& params) {
  return p_context_conf * r_magnitude(p_bottom_up, params) *
         r_sign(p_object_given_context, params);
}

FusedDecision fuse(const ProbabilityVector& p_bottom_up, const ScenePrediction& scene,
                   const context::ContextPrior& prior, const GistPrediction& gist,
                   const FusionParams& params, const CategoryCatalog& catalog) {
  const std::size_t n = catalog.size();
  p_bottom_up.validate(n);
  if (prior.values.size() != n)
    throw Error("fuse: prior length does not match catalog");

  FusedDecision out;
  out.corrected.values.resize(n);
  out.scene_correction.values.resize(n);
  out.gist_correction.values.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    double p_bu = p_bottom_up[i];
    double c_scene = correction(scene.confidence, p_bu, prior.values[i], params);
    double g_i = catalog.kind(i) == gist.kind ? gist.confidence : 1.0 - gist.confidence;
    double c_gist = correction(gist.confidence, p_bu, g_i, params);
    out.scene_correction.values[i] = c_scene;
    out.gist_correction.values[i] = c_gist;
    out.corrected.values[i] = std::clamp(p_bu + c_scene + c_gist, 0.0, 1.0);
  }

  std::size_t best = out.corrected.argmax();
  out.confidence = out.corrected.values.empty() ? 0.0 : out.corrected.values[best];
  if (out.confidence >= params.decision_threshold) out.label = best;
  return out;
}

}  // namespace vap::itc
