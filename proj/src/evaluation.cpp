#include "tscan/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tscan {

const std::vector<GroundTruth>& builtin_ground_truth() {
  static const std::vector<GroundTruth> registry = {
      {"WikiRef220", 5, 5, 2, 20},
      {"20NG", 15, 20, 3, 40},
      {"Reuters", 90, 90, 5, 150},
      {"Brown", 10, 20, 5, 25},
      {"PostNauka", 15, 30, 5, 50},
  };
  return registry;
}

std::optional<GroundTruth> find_ground_truth(std::string_view dataset) {
  for (const auto& truth : builtin_ground_truth()) {
    if (truth.dataset == dataset) return truth;
  }
  return std::nullopt;
}

SeedAgreement band_agreement(const std::vector<std::vector<int>>& bands) {
  SeedAgreement result;
  result.used_bands = static_cast<int>(bands.size());
  if (bands.size() < 2) return result;  // undefined

  std::set<int> unioned(bands.front().begin(), bands.front().end());
  std::set<int> intersected = unioned;
  for (std::size_t i = 1; i < bands.size(); ++i) {
    const std::set<int> current(bands[i].begin(), bands[i].end());
    std::set<int> next_union, next_inter;
    std::set_union(unioned.begin(), unioned.end(), current.begin(), current.end(),
                   std::inserter(next_union, next_union.begin()));
    std::set_intersection(intersected.begin(), intersected.end(), current.begin(), current.end(),
                          std::inserter(next_inter, next_inter.begin()));
    unioned = std::move(next_union);
    intersected = std::move(next_inter);
  }
  if (unioned.empty()) return result;  // all bands empty: nothing to agree on

  result.defined = true;
  result.value = static_cast<double>(intersected.size()) / static_cast<double>(unioned.size());
  return result;
}

SeedAgreement seed_agreement(const std::vector<OptimumVerdict>& verdicts) {
  std::vector<std::vector<int>> usable;
  for (const auto& verdict : verdicts) {
    if (!verdict.boundary_hit && !verdict.band.empty()) usable.push_back(verdict.band);
  }
  return band_agreement(usable);
}

bool is_readable(OptimumCategory category) {
  return category == OptimumCategory::single_pronounced ||
         category == OptimumCategory::interval ||
         category == OptimumCategory::alternating_peaks;
}

double informativity(const std::vector<OptimumVerdict>& verdicts) {
  if (verdicts.empty()) throw std::invalid_argument("informativity: no verdicts");
  std::size_t readable = 0;
  for (const auto& verdict : verdicts) {
    if (is_readable(verdict.category)) ++readable;
  }
  return static_cast<double>(readable) / static_cast<double>(verdicts.size());
}

bool expected_hit(const std::vector<int>& band, const GroundTruth& truth) {
  for (const int t : band) {
    if (t >= truth.expected_lo && t <= truth.expected_hi) return true;
  }
  return false;
}

std::vector<PerformanceRow> performance_table(const std::vector<VerdictRecord>& records,
                                              const std::map<std::string, GroundTruth>& truths) {
  // metric -> (dataset, family) -> verdicts, keyed deterministically.
  std::map<std::string, std::map<std::pair<std::string, std::string>,
                                 std::vector<const VerdictRecord*>>>
      cells;
  for (const auto& record : records) {
    cells[record.metric][{record.dataset, record.family}].push_back(&record);
  }

  std::vector<PerformanceRow> rows;
  for (const auto& [metric, metric_cells] : cells) {
    PerformanceRow row;
    row.metric = metric;
    double jaccard_sum = 0.0, informativity_sum = 0.0;
    std::int64_t hits = 0;

    for (const auto& [cell_key, cell_records] : metric_cells) {
      std::vector<OptimumVerdict> verdicts;
      verdicts.reserve(cell_records.size());
      for (const auto* record : cell_records) verdicts.push_back(record->verdict);

      const SeedAgreement agreement = seed_agreement(verdicts);
      if (agreement.defined) {
        jaccard_sum += agreement.value;
        ++row.jaccard_cells;
      }
      informativity_sum += informativity(verdicts);
      ++row.informativity_cells;

      const auto truth = truths.find(cell_key.first);
      if (truth != truths.end()) {
        for (const auto& verdict : verdicts) {
          if (expected_hit(verdict.band, truth->second)) ++hits;
          ++row.expected_verdicts;
        }
      }
    }

    if (row.jaccard_cells > 0) {
      row.jaccard = jaccard_sum / row.jaccard_cells;
      row.jaccard_defined = true;
    }
    row.informativity = informativity_sum / row.informativity_cells;
    if (row.expected_verdicts > 0) {
      row.expected = static_cast<double>(hits) / row.expected_verdicts;
      row.expected_defined = true;
    }
    rows.push_back(std::move(row));
  }
  // std::map iteration already sorted rows by metric identifier.
  return rows;
}

std::string format_performance_table(const std::vector<PerformanceRow>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %9s %14s %9s   %s\n", "metric", "jaccard",
                "informativity", "expected", "cells(j/i) verdicts(e)");
  out << line;
  for (const auto& row : rows) {
    char jaccard[24], expected[24];
    if (row.jaccard_defined) {
      std::snprintf(jaccard, sizeof jaccard, "%9.4f", row.jaccard);
    } else {
      std::snprintf(jaccard, sizeof jaccard, "%9s", "-");
    }
    if (row.expected_defined) {
      std::snprintf(expected, sizeof expected, "%9.4f", row.expected);
    } else {
      std::snprintf(expected, sizeof expected, "%9s", "-");
    }
    std::snprintf(line, sizeof line, "%-22s %s %14.4f %s   %d/%d %d\n", row.metric.c_str(),
                  jaccard, row.informativity, expected, row.jaccard_cells,
                  row.informativity_cells, row.expected_verdicts);
    out << line;
  }
  return out.str();
}

}  // namespace tscan
