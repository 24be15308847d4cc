#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vap/types.hpp"

namespace vap::svm {

class DegenerateModelError : public Error {
 public:
  explicit DegenerateModelError(const std::string& msg) : Error(msg) {}
};

struct KernelSpec {
  enum class Kind { Linear, Rbf };
  Kind kind = Kind::Linear;
  double gamma = 1.0;  // RBF only, > 0

  static KernelSpec linear() { return {Kind::Linear, 0.0}; }
  static KernelSpec rbf(double gamma);
};

double kernel_eval(const KernelSpec& k, const std::vector<double>& a,
                   const std::vector<double>& b);

// label is +1/-1 for binary training; multi-class wrappers store the
// category id instead. weight scales the sample's box constraint.
struct Sample {
  std::vector<double> x;
  int label = 0;
  double weight = 1.0;
};

struct TrainOptions {
  double C = 10.0;
  double tol = 1e-3;
  int max_epochs = 1000;       // examine-all sweeps
  bool standardize = true;     // per-dimension mean/variance from the training set
};

// Frozen per-dimension affine map fit on the training set.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> inv_std;

  bool empty() const { return mean.empty(); }
  static Standardizer fit(const std::vector<Sample>& samples);
  static Standardizer identity(std::size_t dim);
  std::vector<double> apply(const std::vector<double>& x) const;
};

struct Calibration {
  double a = 0.0;  // p = 1 / (1 + exp(a*f + b)); decreasing in f when a < 0
  double b = 0.0;
};

// Kernel SVM decision function: f(x) = sum_i coef_i K(sv_i, x) + bias,
// coef_i = alpha_i * y_i. Support vectors are stored in standardized
// space; the standardizer is frozen at first training and survives
// refinement.
class SvmModel {
 public:
  const KernelSpec& kernel() const { return kernel_; }
  double C() const { return C_; }
  double bias() const { return bias_; }
  const Calibration& calibration() const { return calibration_; }
  void set_calibration(Calibration c) { calibration_ = c; }
  const Standardizer& standardizer() const { return standardizer_; }
  std::size_t support_count() const { return support_.size(); }
  const std::vector<std::vector<double>>& support_vectors() const { return support_; }
  const std::vector<double>& coefficients() const { return coef_; }
  const std::vector<int>& support_labels() const { return labels_; }
  const std::vector<double>& support_alphas() const { return alphas_; }
  std::size_t dim() const { return dim_; }

  // Signed decision value; throws Error on dimension mismatch.
  double score(const std::vector<double>& x) const;
  // Calibrated P(label = +1 | x) in [0,1].
  double probability(const std::vector<double>& x) const;

  // Explicit primal weights, linear kernel only (standardized space).
  std::vector<double> linear_weights() const;

  friend class Trainer;
  friend class MulticlassSvm;

 private:
  KernelSpec kernel_;
  double C_ = 1.0;
  double bias_ = 0.0;
  std::size_t dim_ = 0;
  Standardizer standardizer_;
  Calibration calibration_;
  std::vector<std::vector<double>> support_;  // standardized
  std::vector<double> coef_;                  // alpha_i * y_i
  std::vector<double> alphas_;
  std::vector<int> labels_;
};

struct TrainDiagnostics {
  std::vector<double> alpha;  // aligned with the input samples
  double dual_objective = 0.0;
  int take_steps = 0;
  int epochs = 0;
};

// Sequential minimal optimization (working-set size 2) on the dual.
// Requires >= 2 samples with both labels present; throws
// DegenerateModelError otherwise.
SvmModel train_smo(const std::vector<Sample>& samples, const KernelSpec& kernel,
                   const TrainOptions& options, TrainDiagnostics* diagnostics = nullptr);

inline double score(const SvmModel& model, const std::vector<double>& x) {
  return model.score(x);
}

// Maximum-likelihood sigmoid fit (Platt scaling) over model scores.
// Requires >= 10 samples; a single-class input yields the flat
// calibration p = smoothed class prior. The fit is stored on the model
// and returned.
Calibration calibrate(SvmModel& model, const std::vector<Sample>& samples);

// Worst KKT violation of (alpha, model) over the given samples; the
// training contract is residual <= tol.
double max_kkt_residual(const SvmModel& model, const std::vector<Sample>& samples,
                        const std::vector<double>& alpha);

// Sample store for idle-time refinement. Eviction at capacity is FIFO
// among samples that were not margin-critical when inserted
// (|score| > 1); falls back to the overall oldest.
class TrainingBuffer {
 public:
  explicit TrainingBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(Sample sample, double score_at_insert);
  void clear();
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::vector<Sample> samples() const;

 private:
  struct Entry {
    Sample sample;
    std::uint64_t order;
    bool margin_critical;
  };
  std::size_t capacity_;
  std::uint64_t next_order_ = 0;
  std::vector<Entry> entries_;
};

// Warm retrain on (support vectors of `model`) U (buffer samples).
// Buffer labels must be +1/-1. The standardizer and calibration carry
// over unchanged.
SvmModel refine(const SvmModel& model, const std::vector<Sample>& buffer_samples,
                double tol);

// One-vs-rest ensemble over catalog category ids with independent
// per-class calibrated confidences.
class MulticlassSvm {
 public:
  MulticlassSvm() = default;

  // labels are category ids in [0, n_classes). Every class present in
  // `labels` gets a binary model; absent classes score 0 probability.
  static MulticlassSvm train(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, int n_classes,
                             const KernelSpec& kernel, const TrainOptions& options);

  std::size_t n_classes() const { return models_.size(); }
  bool has_model(int category) const;
  const SvmModel& model(int category) const;

  // Raw one-vs-rest decision value for `category` (0 when untrained).
  double margin(const std::vector<double>& x, int category) const;
  // Independent calibrated per-class confidences, clamped to [0,1].
  std::vector<double> probabilities(const std::vector<double>& x) const;
  int predict(const std::vector<double>& x) const;

  // Refines every trained class model with the buffer relabeled
  // one-vs-rest (sample label = category id).
  MulticlassSvm refined(const std::vector<Sample>& buffer_samples, double tol) const;

  void save(const std::string& path) const;
  static MulticlassSvm load(const std::string& path);

 private:
  std::vector<std::optional<SvmModel>> models_;
  KernelSpec kernel_;
  TrainOptions options_;
};

}  // namespace vap::svm
