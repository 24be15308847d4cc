#pragma once

#include <set>
#include <string>
#include <vector>

#include "vap/types.hpp"

namespace vap::context {

// Ordered, immutable list of scene names.
class SceneCatalog {
 public:
  SceneCatalog() = default;
  explicit SceneCatalog(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

// Scene-by-category co-occurrence counts with Laplace smoothing.
class SOMatrix {
 public:
  SOMatrix() = default;
  SOMatrix(std::size_t n_scenes, std::size_t n_categories, double epsilon = 1.0);

  std::size_t scenes() const { return rows_; }
  std::size_t categories() const { return cols_; }
  double epsilon() const { return epsilon_; }
  double count(std::size_t scene, std::size_t category) const;
  void add(std::size_t scene, std::size_t category, double amount = 1.0);

  // (count + eps) / sum(count + eps); sums to 1 within 1e-9.
  std::vector<double> normalized_row(std::size_t scene) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  double epsilon_ = 1.0;
  std::vector<double> counts_;
};

// Category-by-category co-appearance counts. Counts are symmetric with
// a structurally zero diagonal; row normalization runs over the
// off-diagonal entries only.
class OOMatrix {
 public:
  OOMatrix() = default;
  explicit OOMatrix(std::size_t n_categories, double epsilon = 1.0);

  std::size_t categories() const { return n_; }
  double epsilon() const { return epsilon_; }
  double count(std::size_t a, std::size_t b) const;
  void add_pair(std::size_t a, std::size_t b, double amount = 1.0);

  // Diagonal entry is 0; off-diagonal entries sum to 1 within 1e-9.
  std::vector<double> normalized_row(std::size_t category) const;

 private:
  std::size_t n_ = 0;
  double epsilon_ = 1.0;
  std::vector<double> counts_;
};

// P(category | context) per catalog category, entries in [0,1].
struct ContextPrior {
  std::vector<double> values;
};

// alpha_mix * SO[scene] + (1 - alpha_mix) * mean over `present` of
// OO[cat]; falls back to the SO row alone when `present` is empty.
// Throws Error for an unknown scene id or alpha_mix outside [0,1].
ContextPrior prior_from_context(const SOMatrix& so, const OOMatrix& oo,
                                const ScenePrediction& scene,
                                const std::set<std::size_t>& present, double alpha_mix);

// SO[scene, c] += 1 per confirmed category; OO gets +1 on both sides of
// every unordered confirmed pair.
void update_context(SOMatrix& so, OOMatrix& oo, std::size_t scene_id,
                    const std::set<std::size_t>& confirmed);

// Bootstrap/persist format: JSON with scene list, category list and
// both count tables.
struct ContextState {
  SceneCatalog scenes;
  SOMatrix so;
  OOMatrix oo;
};

void save_context(const ContextState& state, const CategoryCatalog& catalog,
                  const std::string& path);
ContextState load_context(const CategoryCatalog& catalog, const std::string& path);

}  // namespace vap::context
