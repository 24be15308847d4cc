#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vap/types.hpp"

namespace vap::metrics {

// One tracked-object appearance in one frame, matched to ground truth;
// the unit of error-rate accounting.
struct InstanceRecord {
  int frame_index = 0;
  int gt_object_id = 0;
  std::size_t gt_category = 0;
  std::optional<std::size_t> decision;
  std::vector<double> scores;  // per-category confidence used for ranking
  int file_id = -1;

  bool correct() const { return decision && *decision == gt_category; }
};

struct CategoryPRF {
  std::size_t category = 0;
  long tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Multi-class instance confusion per category. Categories with no
// ground-truth positives and no predictions are skipped.
std::vector<CategoryPRF> per_category_prf(const std::vector<InstanceRecord>& records,
                                          std::size_t n_categories);

// All-points interpolated area under the precision-recall curve for
// one category, instances ranked by scores[category].
double average_precision(const std::vector<InstanceRecord>& records, std::size_t category);

struct ApRow {
  std::size_t category = 0;
  double ap = 0.0;
};

// AP per category with ground-truth positives, plus their mean.
std::pair<std::vector<ApRow>, double> mean_average_precision(
    const std::vector<InstanceRecord>& records, std::size_t n_categories);

// error_rate[i] = misclassified among records[0..i] / (i+1)
std::vector<double> cumulative_error_curve(const std::vector<InstanceRecord>& records);

double final_error_rate(const std::vector<InstanceRecord>& records);

// CSV writers; every file carries a header row, decimal-point floats.
void write_cumulative_error_csv(std::ostream& out, const std::vector<InstanceRecord>& records,
                                const CategoryCatalog& catalog);
void write_metrics_csv(std::ostream& out, const std::vector<CategoryPRF>& rows,
                       const CategoryCatalog& catalog);
void write_map_csv(std::ostream& out, const std::vector<ApRow>& rows, double map,
                   const CategoryCatalog& catalog);
void write_ablation_csv(std::ostream& out, const std::vector<std::string>& config_names,
                        const std::vector<std::vector<InstanceRecord>>& per_config_records);

}  // namespace vap::metrics
