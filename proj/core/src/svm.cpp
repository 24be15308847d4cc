#include "vap/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vap/log.hpp"
#include "vap/textio.hpp"

namespace vap::svm {

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0.0)) throw Error("kernel: rbf gamma must be > 0");
  return {Kind::Rbf, gamma};
}

double kernel_eval(const KernelSpec& k, const std::vector<double>& a,
                   const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("kernel: dimension mismatch");
  if (k.kind == KernelSpec::Kind::Linear) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot;
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-k.gamma * d2);
}

Standardizer Standardizer::fit(const std::vector<Sample>& samples) {
  Standardizer s;
  if (samples.empty()) return s;
  std::size_t dim = samples[0].x.size();
  s.mean.assign(dim, 0.0);
  s.inv_std.assign(dim, 1.0);
  for (const auto& smp : samples)
    for (std::size_t d = 0; d < dim; ++d) s.mean[d] += smp.x[d];
  for (double& m : s.mean) m /= static_cast<double>(samples.size());
  std::vector<double> var(dim, 0.0);
  for (const auto& smp : samples)
    for (std::size_t d = 0; d < dim; ++d) {
      double diff = smp.x[d] - s.mean[d];
      var[d] += diff * diff;
    }
  for (std::size_t d = 0; d < dim; ++d) {
    double sd = std::sqrt(var[d] / static_cast<double>(samples.size()));
    s.inv_std[d] = sd > 1e-12 ? 1.0 / sd : 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(std::size_t dim) {
  Standardizer s;
  s.mean.assign(dim, 0.0);
  s.inv_std.assign(dim, 1.0);
  return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
  if (empty()) return x;
  if (x.size() != mean.size()) throw Error("standardizer: dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = (x[d] - mean[d]) * inv_std[d];
  return out;
}

double SvmModel::score(const std::vector<double>& x) const {
  if (x.size() != dim_) throw Error("svm: input dimension mismatch");
  std::vector<double> z = standardizer_.apply(x);
  double f = bias_;
  for (std::size_t i = 0; i < support_.size(); ++i)
    f += coef_[i] * kernel_eval(kernel_, support_[i], z);
  return f;
}

double SvmModel::probability(const std::vector<double>& x) const {
  double f = score(x);
  double t = calibration_.a * f + calibration_.b;
  double p;
  if (t >= 0.0)
    p = std::exp(-t) / (1.0 + std::exp(-t));
  else
    p = 1.0 / (1.0 + std::exp(t));
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> SvmModel::linear_weights() const {
  if (kernel_.kind != KernelSpec::Kind::Linear)
    throw Error("svm: explicit weights exist only for the linear kernel");
  std::vector<double> w(dim_, 0.0);
  for (std::size_t i = 0; i < support_.size(); ++i)
    for (std::size_t d = 0; d < dim_; ++d) w[d] += coef_[i] * support_[i][d];
  return w;
}

// ---------------------------------------------------------------------------
// SMO

class Trainer {
 public:
  Trainer(std::vector<std::vector<double>> xs, std::vector<int> ys, std::vector<double> box,
          const KernelSpec& kernel, const TrainOptions& options)
      : x_(std::move(xs)), y_(std::move(ys)), box_(std::move(box)), kernel_(kernel),
        opts_(options), n_(x_.size()) {
    alpha_.assign(n_, 0.0);
    // f(x) = 0 initially, so E_i = -y_i
    err_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) err_[i] = -static_cast<double>(y_[i]);
    cache_gram_ = n_ <= 2048;
    if (cache_gram_) {
      gram_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
          gram_[i * n_ + j] = gram_[j * n_ + i] = kernel_eval(kernel_, x_[i], x_[j]);
    }
  }

  void solve(TrainDiagnostics* diag) {
    int num_changed = 0;
    bool examine_all = true;
    int epochs = 0;
    while ((num_changed > 0 || examine_all) && epochs < opts_.max_epochs) {
      num_changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < n_; ++i) num_changed += examine(i);
      } else {
        for (std::size_t i = 0; i < n_; ++i)
          if (is_unbound(i)) num_changed += examine(i);
      }
      if (examine_all)
        examine_all = false;
      else if (num_changed == 0)
        examine_all = true;
      ++epochs;
    }
    if (diag) {
      diag->alpha = alpha_;
      diag->take_steps = steps_;
      diag->epochs = epochs;
      diag->dual_objective = dual_objective();
    }
  }

  SvmModel finalize(const KernelSpec& kernel, const TrainOptions& opts,
                    Standardizer standardizer, std::size_t dim) const {
    SvmModel m;
    m.kernel_ = kernel;
    m.C_ = opts.C;
    m.bias_ = b_;
    m.dim_ = dim;
    m.standardizer_ = std::move(standardizer);
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] > kSvEps) {
        m.support_.push_back(x_[i]);
        m.alphas_.push_back(alpha_[i]);
        m.labels_.push_back(y_[i]);
        m.coef_.push_back(alpha_[i] * y_[i]);
      }
    }
    return m;
  }

  double dual_objective() const {
    double sum = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] <= 0.0) continue;
      sum += alpha_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] <= 0.0) continue;
        quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * k(i, j);
      }
    }
    return sum - 0.5 * quad;
  }

 private:
  static constexpr double kEps = 1e-12;
  static constexpr double kAlphaEps = 1e-8;
  static constexpr double kSvEps = 1e-10;

  double k(std::size_t i, std::size_t j) const {
    return cache_gram_ ? gram_[i * n_ + j] : kernel_eval(kernel_, x_[i], x_[j]);
  }

  bool is_unbound(std::size_t i) const {
    return alpha_[i] > kAlphaEps && alpha_[i] < box_[i] - kAlphaEps;
  }

  int examine(std::size_t i2) {
    double y2 = y_[i2];
    double a2 = alpha_[i2];
    double e2 = err_[i2];
    double r2 = e2 * y2;  // y2*f2 - 1
    bool violated = (r2 < -opts_.tol && a2 < box_[i2] - kAlphaEps) ||
                    (r2 > opts_.tol && a2 > kAlphaEps);
    if (!violated) return 0;

    // best |E1 - E2| among unbound points
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_unbound(i)) continue;
      double gap = std::abs(err_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && take_step(best, i2)) return 1;

    // rotating sweeps keep the solver deterministic
    std::size_t start = rotate_++ % n_;
    for (std::size_t off = 0; off < n_; ++off) {
      std::size_t i1 = (start + off) % n_;
      if (is_unbound(i1) && take_step(i1, i2)) return 1;
    }
    for (std::size_t off = 0; off < n_; ++off) {
      std::size_t i1 = (start + off) % n_;
      if (take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    double a1o = alpha_[i1], a2o = alpha_[i2];
    double y1 = y_[i1], y2 = y_[i2];
    double e1 = err_[i1], e2 = err_[i2];
    double s = y1 * y2;
    double c1 = box_[i1], c2 = box_[i2];

    double lo, hi;
    if (s > 0) {
      lo = std::max(0.0, a1o + a2o - c1);
      hi = std::min(c2, a1o + a2o);
    } else {
      lo = std::max(0.0, a2o - a1o);
      hi = std::min(c2, c1 + a2o - a1o);
    }
    if (hi - lo < kEps) return false;

    double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
    double eta = k11 + k22 - 2.0 * k12;
    double a2;
    if (eta > kEps) {
      a2 = a2o + y2 * (e1 - e2) / eta;
      a2 = std::clamp(a2, lo, hi);
    } else {
      // flat direction: evaluate the objective at both clip bounds
      double f1v = y1 * (e1 + b_) - a1o * k11 - s * a2o * k12;
      double f2v = y2 * (e2 + b_) - a2o * k22 - s * a1o * k12;
      double l1 = a1o + s * (a2o - lo);
      double h1 = a1o + s * (a2o - hi);
      double lobj = l1 * f1v + lo * f2v + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                    s * lo * l1 * k12;
      double hobj = h1 * f1v + hi * f2v + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                    s * hi * h1 * k12;
      if (lobj < hobj - kEps)
        a2 = lo;
      else if (hobj < lobj - kEps)
        a2 = hi;
      else
        return false;
    }
    if (std::abs(a2 - a2o) < kEps * (a2 + a2o + kEps)) return false;

    double a1 = a1o + s * (a2o - a2);
    if (a1 < 0.0) a1 = 0.0;
    if (a1 > c1) a1 = c1;

    double d1 = a1 - a1o, d2 = a2 - a2o;
    double b1 = b_ - e1 - y1 * d1 * k11 - y2 * d2 * k12;
    double b2 = b_ - e2 - y1 * d1 * k12 - y2 * d2 * k22;
    double b_new;
    if (a1 > kAlphaEps && a1 < c1 - kAlphaEps)
      b_new = b1;
    else if (a2 > kAlphaEps && a2 < c2 - kAlphaEps)
      b_new = b2;
    else
      b_new = 0.5 * (b1 + b2);
    double db = b_new - b_;

    for (std::size_t i = 0; i < n_; ++i)
      err_[i] += y1 * d1 * k(i1, i) + y2 * d2 * k(i2, i) + db;

    alpha_[i1] = a1;
    alpha_[i2] = a2;
    b_ = b_new;
    ++steps_;
    return true;
  }

  std::vector<std::vector<double>> x_;
  std::vector<int> y_;
  std::vector<double> box_;
  KernelSpec kernel_;
  TrainOptions opts_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> err_;
  std::vector<double> gram_;
  bool cache_gram_ = false;
  double b_ = 0.0;
  int steps_ = 0;
  std::size_t rotate_ = 0;
};

namespace {

SvmModel train_in_standard_space(const std::vector<std::vector<double>>& xs,
                                 const std::vector<int>& ys, const std::vector<double>& weights,
                                 const KernelSpec& kernel, const TrainOptions& options,
                                 Standardizer standardizer, TrainDiagnostics* diagnostics) {
  if (xs.size() < 2) throw DegenerateModelError("svm: need at least 2 samples");
  bool has_pos = false, has_neg = false;
  for (int y : ys) {
    if (y > 0) has_pos = true;
    if (y < 0) has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw DegenerateModelError("svm: training set contains a single class");

  std::vector<double> box(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) box[i] = options.C * weights[i];

  Trainer trainer(xs, ys, box, kernel, options);
  trainer.solve(diagnostics);
  return trainer.finalize(kernel, options, std::move(standardizer), xs[0].size());
}

}  // namespace

SvmModel train_smo(const std::vector<Sample>& samples, const KernelSpec& kernel,
                   const TrainOptions& options, TrainDiagnostics* diagnostics) {
  if (samples.size() < 2) throw DegenerateModelError("svm: need at least 2 samples");
  std::size_t dim = samples[0].x.size();
  for (const auto& s : samples) {
    if (s.x.size() != dim) throw Error("svm: inconsistent feature dimensions");
    if (s.label != 1 && s.label != -1) throw Error("svm: binary labels must be +1/-1");
  }
  Standardizer std_map =
      options.standardize ? Standardizer::fit(samples) : Standardizer::identity(dim);
  std::vector<std::vector<double>> xs;
  std::vector<int> ys;
  std::vector<double> ws;
  xs.reserve(samples.size());
  for (const auto& s : samples) {
    xs.push_back(std_map.apply(s.x));
    ys.push_back(s.label);
    ws.push_back(s.weight);
  }
  return train_in_standard_space(xs, ys, ws, kernel, options, std::move(std_map), diagnostics);
}

Calibration calibrate(SvmModel& model, const std::vector<Sample>& samples) {
  if (samples.size() < 10) throw Error("calibrate: needs at least 10 samples");

  std::size_t n_pos = 0;
  for (const auto& s : samples)
    if (s.label > 0) ++n_pos;
  std::size_t n_neg = samples.size() - n_pos;

  if (n_pos == 0 || n_neg == 0) {
    // flat calibration at the smoothed class prior
    double prior = (static_cast<double>(n_pos) + 1.0) / (static_cast<double>(samples.size()) + 2.0);
    Calibration c{0.0, std::log((1.0 - prior) / prior)};
    model.set_calibration(c);
    return c;
  }

  std::vector<double> f(samples.size());
  std::vector<double> t(samples.size());
  double hi = (static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0);
  double lo = 1.0 / (static_cast<double>(n_neg) + 2.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    f[i] = model.score(samples[i].x);
    t[i] = samples[i].label > 0 ? hi : lo;
  }

  // Newton fit with backtracking (Lin, Weng, Keerthi style).
  double a = 0.0;
  double b = std::log((static_cast<double>(n_neg) + 1.0) / (static_cast<double>(n_pos) + 1.0));
  const double sigma = 1e-12;
  auto objective = [&](double aa, double bb) {
    double obj = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double z = aa * f[i] + bb;
      if (z >= 0)
        obj += t[i] * z + std::log1p(std::exp(-z));
      else
        obj += (t[i] - 1.0) * z + std::log1p(std::exp(z));
    }
    return obj;
  };
  double obj = objective(a, b);
  for (int iter = 0; iter < 200; ++iter) {
    double h11 = sigma, h22 = sigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double z = a * f[i] + b;
      double p, q;
      if (z >= 0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      double d2 = p * q;
      h11 += f[i] * f[i] * d2;
      h22 += d2;
      h21 += f[i] * d2;
      double d1 = t[i] - p;
      g1 += f[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-7 && std::abs(g2) < 1e-7) break;
    double det = h11 * h22 - h21 * h21;
    double da = -(h22 * g1 - h21 * g2) / det;
    double db = -(-h21 * g1 + h11 * g2) / det;
    double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= 1e-10) {
      double na = a + step * da, nb = b + step * db;
      double nobj = objective(na, nb);
      if (nobj < obj + 1e-4 * step * gd) {
        a = na;
        b = nb;
        obj = nobj;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  Calibration c{a, b};
  model.set_calibration(c);
  return c;
}

double max_kkt_residual(const SvmModel& model, const std::vector<Sample>& samples,
                        const std::vector<double>& alpha) {
  if (samples.size() != alpha.size()) throw Error("kkt: alpha/sample size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double yf = samples[i].label * model.score(samples[i].x);
    double ci = model.C() * samples[i].weight;
    double boundary = 1e-8 * std::max(1.0, ci);
    double r;
    if (alpha[i] <= boundary)
      r = std::max(0.0, 1.0 - yf);
    else if (alpha[i] >= ci - boundary)
      r = std::max(0.0, yf - 1.0);
    else
      r = std::abs(yf - 1.0);
    worst = std::max(worst, r);
  }
  return worst;
}

void TrainingBuffer::push(Sample sample, double score_at_insert) {
  if (capacity_ == 0) return;
  if (entries_.size() >= capacity_) {
    // FIFO among non-margin-critical entries, oldest overall otherwise
    std::size_t victim = entries_.size();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].margin_critical) continue;
      if (victim == entries_.size() || entries_[i].order < entries_[victim].order) victim = i;
    }
    if (victim == entries_.size()) {
      victim = 0;
      for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].order < entries_[victim].order) victim = i;
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  entries_.push_back({std::move(sample), next_order_++, std::abs(score_at_insert) <= 1.0});
}

void TrainingBuffer::clear() { entries_.clear(); }

std::vector<Sample> TrainingBuffer::samples() const {
  std::vector<Sample> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.sample);
  return out;
}

SvmModel refine(const SvmModel& model, const std::vector<Sample>& buffer_samples, double tol) {
  std::vector<std::vector<double>> xs;
  std::vector<int> ys;
  std::vector<double> ws;
  for (std::size_t i = 0; i < model.support_count(); ++i) {
    xs.push_back(model.support_vectors()[i]);
    ys.push_back(model.support_labels()[i]);
    ws.push_back(1.0);
  }
  for (const auto& s : buffer_samples) {
    if (s.x.size() != model.dim()) throw Error("refine: buffer dimension mismatch");
    xs.push_back(model.standardizer().apply(s.x));
    ys.push_back(s.label);
    ws.push_back(s.weight);
  }
  TrainOptions opts;
  opts.C = model.C();
  opts.tol = tol;
  SvmModel next = train_in_standard_space(xs, ys, ws, model.kernel(), opts,
                                          model.standardizer(), nullptr);
  next.set_calibration(model.calibration());
  return next;
}

// ---------------------------------------------------------------------------
// one-vs-rest ensemble

MulticlassSvm MulticlassSvm::train(const std::vector<std::vector<double>>& features,
                                   const std::vector<int>& labels, int n_classes,
                                   const KernelSpec& kernel, const TrainOptions& options) {
  if (features.size() != labels.size()) throw Error("svm: features/labels size mismatch");
  if (n_classes <= 0) throw Error("svm: n_classes must be positive");
  MulticlassSvm out;
  out.kernel_ = kernel;
  out.options_ = options;
  out.models_.resize(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) {
    bool any = false;
    std::vector<Sample> binary;
    binary.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
      binary.push_back({features[i], labels[i] == c ? 1 : -1, 1.0});
      if (labels[i] == c) any = true;
    }
    if (!any) continue;
    try {
      SvmModel m = train_smo(binary, kernel, options);
      if (binary.size() >= 10) {
        calibrate(m, binary);
      } else {
        m.set_calibration({-2.0, 0.0});
      }
      out.models_[static_cast<std::size_t>(c)] = std::move(m);
    } catch (const DegenerateModelError& e) {
      log::warn(std::string("svm: skipping class ") + std::to_string(c) + ": " + e.what());
    }
  }
  return out;
}

bool MulticlassSvm::has_model(int category) const {
  return category >= 0 && static_cast<std::size_t>(category) < models_.size() &&
         models_[static_cast<std::size_t>(category)].has_value();
}

const SvmModel& MulticlassSvm::model(int category) const {
  if (!has_model(category)) throw Error("svm: no model for category " + std::to_string(category));
  return *models_[static_cast<std::size_t>(category)];
}

double MulticlassSvm::margin(const std::vector<double>& x, int category) const {
  if (!has_model(category)) return 0.0;
  return models_[static_cast<std::size_t>(category)]->score(x);
}

std::vector<double> MulticlassSvm::probabilities(const std::vector<double>& x) const {
  std::vector<double> out(models_.size(), 0.0);
  for (std::size_t c = 0; c < models_.size(); ++c)
    if (models_[c]) out[c] = models_[c]->probability(x);
  return out;
}

int MulticlassSvm::predict(const std::vector<double>& x) const {
  std::vector<double> p = probabilities(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.size(); ++c)
    if (p[c] > p[best]) best = c;
  return static_cast<int>(best);
}

MulticlassSvm MulticlassSvm::refined(const std::vector<Sample>& buffer_samples,
                                     double tol) const {
  MulticlassSvm out;
  out.kernel_ = kernel_;
  out.options_ = options_;
  out.models_.resize(models_.size());
  for (std::size_t c = 0; c < models_.size(); ++c) {
    if (!models_[c]) continue;
    std::vector<Sample> binary;
    binary.reserve(buffer_samples.size());
    for (const auto& s : buffer_samples)
      binary.push_back({s.x, s.label == static_cast<int>(c) ? 1 : -1, s.weight});
    out.models_[c] = refine(*models_[c], binary, tol);
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

void write_vector(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << textio::format_double(v[i]);
  }
  out << '\n';
}

std::vector<double> read_vector(std::istream& in, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) {
    std::string tok;
    in >> tok;
    x = textio::parse_double(tok);
  }
  return v;
}

}  // namespace

void MulticlassSvm::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("svm: cannot write '" + path + "'");
  out << "vap-svm 1\n";
  out << "classes " << models_.size() << "\n";
  out << "kernel " << (kernel_.kind == KernelSpec::Kind::Linear ? "linear" : "rbf") << ' '
      << textio::format_double(kernel_.gamma) << "\n";
  out << "C " << textio::format_double(options_.C) << " tol "
      << textio::format_double(options_.tol) << "\n";
  for (std::size_t c = 0; c < models_.size(); ++c) {
    if (!models_[c]) {
      out << "class " << c << " absent\n";
      continue;
    }
    const SvmModel& m = *models_[c];
    out << "class " << c << " present\n";
    out << "dim " << m.dim() << "\n";
    write_vector(out, m.standardizer().mean);
    write_vector(out, m.standardizer().inv_std);
    out << "bias " << textio::format_double(m.bias()) << " calib "
        << textio::format_double(m.calibration().a) << ' '
        << textio::format_double(m.calibration().b) << "\n";
    out << "nsv " << m.support_count() << "\n";
    for (std::size_t i = 0; i < m.support_count(); ++i) {
      out << textio::format_double(m.support_alphas()[i]) << ' ' << m.support_labels()[i] << ' ';
      write_vector(out, m.support_vectors()[i]);
    }
  }
  if (!out) throw Error("svm: write to '" + path + "' failed");
}

MulticlassSvm MulticlassSvm::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("svm: cannot open '" + path + "'");
  std::string word;
  int version = 0;
  in >> word >> version;
  if (word != "vap-svm" || version != 1) throw Error("svm: '" + path + "' has unknown format");
  MulticlassSvm out;
  std::size_t n_classes = 0;
  in >> word >> n_classes;
  out.models_.resize(n_classes);
  std::string kind, tok;
  in >> word >> kind >> tok;
  out.kernel_.kind = kind == "linear" ? KernelSpec::Kind::Linear : KernelSpec::Kind::Rbf;
  out.kernel_.gamma = textio::parse_double(tok);
  in >> word >> tok;
  out.options_.C = textio::parse_double(tok);
  in >> word >> tok;
  out.options_.tol = textio::parse_double(tok);
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t id = 0;
    std::string state;
    in >> word >> id >> state;
    if (word != "class" || id != c) throw Error("svm: '" + path + "' is corrupt");
    if (state == "absent") continue;
    SvmModel m;
    m.kernel_ = out.kernel_;
    m.C_ = out.options_.C;
    in >> word >> m.dim_;
    m.standardizer_.mean = read_vector(in, m.dim_);
    m.standardizer_.inv_std = read_vector(in, m.dim_);
    in >> word >> tok;
    m.bias_ = textio::parse_double(tok);
    in >> word >> tok;
    m.calibration_.a = textio::parse_double(tok);
    in >> tok;
    m.calibration_.b = textio::parse_double(tok);
    std::size_t nsv = 0;
    in >> word >> nsv;
    for (std::size_t i = 0; i < nsv; ++i) {
      in >> tok;
      double alpha = textio::parse_double(tok);
      int label = 0;
      in >> label;
      std::vector<double> sv = read_vector(in, m.dim_);
      m.alphas_.push_back(alpha);
      m.labels_.push_back(label);
      m.coef_.push_back(alpha * label);
      m.support_.push_back(std::move(sv));
    }
    if (!in) throw Error("svm: '" + path + "' truncated");
    out.models_[c] = std::move(m);
  }
  return out;
}

}  // namespace vap::svm
