#include "vap/context.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace vap::context {

SceneCatalog::SceneCatalog(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error("scene catalog: must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw Error("scene catalog: duplicate scene '" + n + "'");
}

std::size_t SceneCatalog::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error("scene catalog: unknown scene '" + name + "'");
}

SOMatrix::SOMatrix(std::size_t n_scenes, std::size_t n_categories, double epsilon)
    : rows_(n_scenes), cols_(n_categories), epsilon_(epsilon),
      counts_(n_scenes * n_categories, 0.0) {
  if (n_scenes == 0 || n_categories == 0) throw Error("SO matrix: empty dimensions");
  if (!(epsilon > 0.0)) throw Error("SO matrix: smoothing must be > 0");
}

double SOMatrix::count(std::size_t scene, std::size_t category) const {
  if (scene >= rows_ || category >= cols_) throw Error("SO matrix: index out of range");
  return counts_[scene * cols_ + category];
}

void SOMatrix::add(std::size_t scene, std::size_t category, double amount) {
  if (scene >= rows_ || category >= cols_) throw Error("SO matrix: index out of range");
  counts_[scene * cols_ + category] += amount;
}

std::vector<double> SOMatrix::normalized_row(std::size_t scene) const {
  if (scene >= rows_) throw Error("SO matrix: scene index out of range");
  std::vector<double> row(cols_);
  double total = 0.0;
  for (std::size_t c = 0; c < cols_; ++c) {
    row[c] = counts_[scene * cols_ + c] + epsilon_;
    total += row[c];
  }
  for (double& v : row) v /= total;
  return row;
}

OOMatrix::OOMatrix(std::size_t n_categories, double epsilon)
    : n_(n_categories), epsilon_(epsilon), counts_(n_categories * n_categories, 0.0) {
  if (n_categories == 0) throw Error("OO matrix: empty dimensions");
  if (!(epsilon > 0.0)) throw Error("OO matrix: smoothing must be > 0");
}

double OOMatrix::count(std::size_t a, std::size_t b) const {
  if (a >= n_ || b >= n_) throw Error("OO matrix: index out of range");
  return counts_[a * n_ + b];
}

void OOMatrix::add_pair(std::size_t a, std::size_t b, double amount) {
  if (a >= n_ || b >= n_) throw Error("OO matrix: index out of range");
  if (a == b) return;  // diagonal is structurally zero
  counts_[a * n_ + b] += amount;
  counts_[b * n_ + a] += amount;
}

std::vector<double> OOMatrix::normalized_row(std::size_t category) const {
  if (category >= n_) throw Error("OO matrix: index out of range");
  std::vector<double> row(n_, 0.0);
  if (n_ == 1) return row;
  double total = 0.0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (c == category) continue;
    row[c] = counts_[category * n_ + c] + epsilon_;
    total += row[c];
  }
  for (std::size_t c = 0; c < n_; ++c)
    if (c != category) row[c] /= total;
  return row;
}

ContextPrior prior_from_context(const SOMatrix& so, const OOMatrix& oo,
                                const ScenePrediction& scene,
                                const std::set<std::size_t>& present, double alpha_mix) {
  if (!(alpha_mix >= 0.0 && alpha_mix <= 1.0))
    throw Error("prior_from_context: alpha_mix outside [0,1]");
  if (scene.scene_id < 0 || static_cast<std::size_t>(scene.scene_id) >= so.scenes())
    throw Error("prior_from_context: unknown scene id " + std::to_string(scene.scene_id));

  std::vector<double> prior = so.normalized_row(static_cast<std::size_t>(scene.scene_id));
  if (!present.empty()) {
    std::vector<double> co(so.categories(), 0.0);
    for (std::size_t cat : present) {
      std::vector<double> row = oo.normalized_row(cat);
      for (std::size_t c = 0; c < co.size(); ++c) co[c] += row[c];
    }
    double inv = 1.0 / static_cast<double>(present.size());
    for (std::size_t c = 0; c < prior.size(); ++c)
      prior[c] = alpha_mix * prior[c] + (1.0 - alpha_mix) * co[c] * inv;
  }
  return ContextPrior{std::move(prior)};
}

void update_context(SOMatrix& so, OOMatrix& oo, std::size_t scene_id,
                    const std::set<std::size_t>& confirmed) {
  for (std::size_t cat : confirmed) so.add(scene_id, cat);
  for (auto a = confirmed.begin(); a != confirmed.end(); ++a) {
    auto b = a;
    for (++b; b != confirmed.end(); ++b) oo.add_pair(*a, *b);
  }
}

void save_context(const ContextState& state, const CategoryCatalog& catalog,
                  const std::string& path) {
  nlohmann::json j;
  j["scenes"] = state.scenes.names();
  std::vector<std::string> cats;
  for (const auto& c : catalog.categories()) cats.push_back(c.name);
  j["categories"] = cats;
  j["so_epsilon"] = state.so.epsilon();
  j["oo_epsilon"] = state.oo.epsilon();
  nlohmann::json so_rows = nlohmann::json::array();
  for (std::size_t s = 0; s < state.so.scenes(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < state.so.categories(); ++c) row.push_back(state.so.count(s, c));
    so_rows.push_back(row);
  }
  j["so_counts"] = so_rows;
  nlohmann::json oo_rows = nlohmann::json::array();
  for (std::size_t a = 0; a < state.oo.categories(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < state.oo.categories(); ++b) row.push_back(state.oo.count(a, b));
    oo_rows.push_back(row);
  }
  j["oo_counts"] = oo_rows;

  std::ofstream out(path);
  if (!out) throw Error("context: cannot write '" + path + "'");
  out << j.dump(1) << "\n";
  if (!out) throw Error("context: write to '" + path + "' failed");
}

ContextState load_context(const CategoryCatalog& catalog, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("context: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("context: '" + path + "' is not valid JSON: " + std::string(e.what()));
  }

  std::vector<std::string> cats = j.at("categories").get<std::vector<std::string>>();
  if (cats.size() != catalog.size())
    throw Error("context: '" + path + "' category list does not match the catalog");
  for (std::size_t i = 0; i < cats.size(); ++i)
    if (cats[i] != catalog.name(i))
      throw Error("context: '" + path + "' category order does not match the catalog");

  ContextState state;
  state.scenes = SceneCatalog(j.at("scenes").get<std::vector<std::string>>());
  double eps_s = j.value("so_epsilon", 1.0);
  double eps_o = j.value("oo_epsilon", 1.0);
  state.so = SOMatrix(state.scenes.size(), catalog.size(), eps_s);
  state.oo = OOMatrix(catalog.size(), eps_o);

  const auto& so_rows = j.at("so_counts");
  if (so_rows.size() != state.scenes.size())
    throw Error("context: '" + path + "' so_counts row count mismatch");
  for (std::size_t s = 0; s < state.scenes.size(); ++s) {
    if (so_rows[s].size() != catalog.size())
      throw Error("context: '" + path + "' so_counts column count mismatch");
    for (std::size_t c = 0; c < catalog.size(); ++c)
      state.so.add(s, c, so_rows[s][c].get<double>());
  }
  const auto& oo_rows = j.at("oo_counts");
  if (oo_rows.size() != catalog.size())
    throw Error("context: '" + path + "' oo_counts row count mismatch");
  for (std::size_t a = 0; a < catalog.size(); ++a) {
    if (oo_rows[a].size() != catalog.size())
      throw Error("context: '" + path + "' oo_counts column count mismatch");
    for (std::size_t b = a + 1; b < catalog.size(); ++b) {
      double ab = oo_rows[a][b].get<double>();
      double ba = oo_rows[b][a].get<double>();
      if (ab != ba) throw Error("context: '" + path + "' oo_counts not symmetric");
      if (ab != 0.0) state.oo.add_pair(a, b, ab);
    }
  }
  return state;
}

}  // namespace vap::context
