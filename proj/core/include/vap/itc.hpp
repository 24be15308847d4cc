#pragma once

#include <optional>
#include <vector>

#include "vap/context.hpp"
#include "vap/types.hpp"

namespace vap::itc {

// Constants of the two regulator functions and the decision rule.
struct FusionParams {
  double a = 1.0;          // Gaussian amplitude
  double mu = 1.0 / 5.0;   // Gaussian center
  double sigma = 1.0 / 3.0;  // Gaussian width
  double b = 10.0;         // tanh steepness
  double c = 1.0 / 8.0;    // tanh center
  double decision_threshold = 0.5;

  void validate() const;
};

// Gross object-class hypothesis from the gist pathway.
struct GistPrediction {
  CategoryKind kind = CategoryKind::ManMade;
  double confidence = 0.0;  // calibrated, in [0,1]; 0 silences the pathway
};

// Per-category correction coefficients of one top-down pathway.
struct CorrectionVector {
  std::vector<double> values;
};

struct FusedDecision {
  ProbabilityVector corrected;
  std::optional<std::size_t> label;  // argmax when above decision_threshold
  double confidence = 0.0;
  CorrectionVector scene_correction;
  CorrectionVector gist_correction;
};

// a * exp(-(p_bu - mu)^2 / (2 sigma^2)), in (0, a]: corrections are
// largest where the bottom-up classifier is ambiguous.
double r_magnitude(double p_bottom_up, const FusionParams& params);

// tanh(b * (p_ctx - c)), in (-1, 1): positive for categories plausible
// in the current context, negative otherwise.
double r_sign(double p_object_given_context, const FusionParams& params);

// One pathway's correction coefficient:
//   C = p_context_conf * r_magnitude(p_bu) * r_sign(p_ctx)
double correction(double p_context_conf, double p_bottom_up, double p_object_given_context,
                  const FusionParams& params);

// Applies both top-down pathways elementwise and clamps to [0,1]. The
// gist pathway maps its binary prediction to per-category evidence via
// the catalog kind: agreement gets the gist confidence, disagreement
// its complement.
FusedDecision fuse(const ProbabilityVector& p_bottom_up, const ScenePrediction& scene,
                   const context::ContextPrior& prior, const GistPrediction& gist,
                   const FusionParams& params, const CategoryCatalog& catalog);

}  // namespace vap::itc
