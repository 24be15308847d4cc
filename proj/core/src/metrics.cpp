#include "vap/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "vap/textio.hpp"

namespace vap::metrics {

std::vector<CategoryPRF> per_category_prf(const std::vector<InstanceRecord>& records,
                                          std::size_t n_categories) {
  std::vector<CategoryPRF> rows(n_categories);
  for (std::size_t c = 0; c < n_categories; ++c) rows[c].category = c;
  for (const auto& r : records) {
    if (r.decision && *r.decision == r.gt_category) {
      ++rows[r.gt_category].tp;
    } else {
      ++rows[r.gt_category].fn;
      if (r.decision) ++rows[*r.decision].fp;
    }
  }
  std::vector<CategoryPRF> out;
  for (auto& row : rows) {
    if (row.tp + row.fp + row.fn == 0) continue;
    row.precision = row.tp + row.fp > 0
                        ? static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fp)
                        : 0.0;
    row.recall = row.tp + row.fn > 0
                     ? static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn)
                     : 0.0;
    row.f1 = row.precision + row.recall > 0.0
                 ? 2.0 * row.precision * row.recall / (row.precision + row.recall)
                 : 0.0;
    out.push_back(row);
  }
  return out;
}

double average_precision(const std::vector<InstanceRecord>& records, std::size_t category) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = category < records[a].scores.size() ? records[a].scores[category] : 0.0;
    double sb = category < records[b].scores.size() ? records[b].scores[category] : 0.0;
    return sa > sb;
  });

  long positives = 0;
  for (const auto& r : records)
    if (r.gt_category == category) ++positives;
  if (positives == 0) return 0.0;

  // all-points interpolation: sum precision at each recall step, then
  // take the running maximum from the right
  std::vector<double> precision_at;
  long tp = 0, seen = 0;
  for (std::size_t idx : order) {
    ++seen;
    if (records[idx].gt_category == category) {
      ++tp;
      precision_at.push_back(static_cast<double>(tp) / static_cast<double>(seen));
    }
  }
  double running_max = 0.0;
  double sum = 0.0;
  for (std::size_t i = precision_at.size(); i-- > 0;) {
    running_max = std::max(running_max, precision_at[i]);
    sum += running_max;
  }
  return sum / static_cast<double>(positives);
}

std::pair<std::vector<ApRow>, double> mean_average_precision(
    const std::vector<InstanceRecord>& records, std::size_t n_categories) {
  std::vector<ApRow> rows;
  double total = 0.0;
  for (std::size_t c = 0; c < n_categories; ++c) {
    bool any = false;
    for (const auto& r : records)
      if (r.gt_category == c) {
        any = true;
        break;
      }
    if (!any) continue;
    double ap = average_precision(records, c);
    rows.push_back({c, ap});
    total += ap;
  }
  double map = rows.empty() ? 0.0 : total / static_cast<double>(rows.size());
  return {rows, map};
}

std::vector<double> cumulative_error_curve(const std::vector<InstanceRecord>& records) {
  std::vector<double> out;
  out.reserve(records.size());
  long errors = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].correct()) ++errors;
    out.push_back(static_cast<double>(errors) / static_cast<double>(i + 1));
  }
  return out;
}

double final_error_rate(const std::vector<InstanceRecord>& records) {
  if (records.empty()) return 0.0;
  long errors = 0;
  for (const auto& r : records)
    if (!r.correct()) ++errors;
  return static_cast<double>(errors) / static_cast<double>(records.size());
}

void write_cumulative_error_csv(std::ostream& out, const std::vector<InstanceRecord>& records,
                                const CategoryCatalog& catalog) {
  out << "instance_index,frame,file_id,gt_object,gt_category,decision,correct,"
         "cumulative_error_rate\n";
  long errors = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.correct()) ++errors;
    double rate = static_cast<double>(errors) / static_cast<double>(i + 1);
    out << i << ',' << r.frame_index << ',' << r.file_id << ',' << r.gt_object_id << ','
        << catalog.name(r.gt_category) << ','
        << (r.decision ? catalog.name(*r.decision) : std::string("none")) << ','
        << (r.correct() ? 1 : 0) << ',' << textio::format_double(rate) << '\n';
  }
}

void write_metrics_csv(std::ostream& out, const std::vector<CategoryPRF>& rows,
                       const CategoryCatalog& catalog) {
  out << "category,tp,fp,fn,precision,recall,f1\n";
  for (const auto& row : rows) {
    out << catalog.name(row.category) << ',' << row.tp << ',' << row.fp << ',' << row.fn << ','
        << textio::format_double(row.precision) << ',' << textio::format_double(row.recall)
        << ',' << textio::format_double(row.f1) << '\n';
  }
}

void write_map_csv(std::ostream& out, const std::vector<ApRow>& rows, double map,
                   const CategoryCatalog& catalog) {
  out << "category,average_precision\n";
  for (const auto& row : rows)
    out << catalog.name(row.category) << ',' << textio::format_double(row.ap) << '\n';
  out << "mAP," << textio::format_double(map) << '\n';
}

void write_ablation_csv(std::ostream& out, const std::vector<std::string>& config_names,
                        const std::vector<std::vector<InstanceRecord>>& per_config_records) {
  out << "instance_index";
  for (const auto& name : config_names) out << ',' << name;
  out << '\n';
  std::size_t rows = 0;
  for (const auto& records : per_config_records) rows = std::max(rows, records.size());
  std::vector<std::vector<double>> curves;
  for (const auto& records : per_config_records) curves.push_back(cumulative_error_curve(records));
  for (std::size_t i = 0; i < rows; ++i) {
    out << i;
    for (const auto& curve : curves) {
      out << ',';
      if (i < curve.size()) out << textio::format_double(curve[i]);
    }
    out << '\n';
  }
}

}  // namespace vap::metrics
