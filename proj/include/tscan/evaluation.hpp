#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tscan/optima.hpp"

namespace tscan {

// Externally asserted plausible topic-count range for a corpus, plus the
// scan range used when studying it.
struct GroundTruth {
  std::string dataset;
  int expected_lo = 0;
  int expected_hi = 0;
  int scan_min = 0;
  int scan_max = 0;
};

// Reference corpora with published expected ranges; user datasets register
// their own ranges through the scan config instead.
const std::vector<GroundTruth>& builtin_ground_truth();
std::optional<GroundTruth> find_ground_truth(std::string_view dataset);

// ---- Per-metric reliability scores ------------------------------------------

// |intersection| / |union| over per-seed bands. Callers exclude unusable
// seeds first; fewer than 2 bands yields defined = false.
struct SeedAgreement {
  double value = 0.0;
  bool defined = false;
  int used_bands = 0;
};
SeedAgreement band_agreement(const std::vector<std::vector<int>>& bands);

// Seed agreement over a cell's verdicts with the unusable ones (boundary hit
// or empty band) excluded first.
SeedAgreement seed_agreement(const std::vector<OptimumVerdict>& verdicts);

bool is_readable(OptimumCategory category);

// Fraction of verdicts whose category is readable (single_pronounced,
// interval, or alternating_peaks). Throws std::invalid_argument when empty.
double informativity(const std::vector<OptimumVerdict>& verdicts);

// True iff the band intersects [expected_lo, expected_hi]; empty bands miss.
bool expected_hit(const std::vector<int>& band, const GroundTruth& truth);

// ---- Aggregation across datasets, families, and seeds ------------------------

// One verdict in its full scan context; the unit the aggregation consumes.
struct VerdictRecord {
  std::string dataset;
  std::string family;
  std::string metric;
  std::uint64_t seed = 0;
  OptimumVerdict verdict;
};

struct PerformanceRow {
  std::string metric;
  // Mean seed_agreement over (dataset, family) cells where it is defined;
  // jaccard_defined is false when no cell qualifies.
  double jaccard = 0.0;
  bool jaccard_defined = false;
  // Mean readable fraction over cells with at least one verdict.
  double informativity = 0.0;
  // Fraction of verdicts (on datasets with registered truth) whose band hits
  // the expected range; expected_defined is false without any such dataset.
  double expected = 0.0;
  bool expected_defined = false;
  // Cell/verdict counts behind the averages, for the plain-text report.
  int jaccard_cells = 0;
  int informativity_cells = 0;
  int expected_verdicts = 0;
};

// Collapses all verdicts into one row per metric identifier, sorted by
// identifier. truths maps dataset name -> ground truth; datasets absent from
// the map contribute to jaccard and informativity but not to expected.
std::vector<PerformanceRow> performance_table(const std::vector<VerdictRecord>& records,
                                              const std::map<std::string, GroundTruth>& truths);

// Fixed-width human-readable rendering of the table (one line per metric,
// undefined entries shown as "-", cell counts included).
std::string format_performance_table(const std::vector<PerformanceRow>& rows);

}  // namespace tscan
