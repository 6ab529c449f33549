#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tscan/config.hpp"
#include "tscan/corpus.hpp"
#include "tscan/evaluation.hpp"
#include "tscan/metrics.hpp"
#include "tscan/optima.hpp"

namespace tscan {

// One measurement row of a curve CSV. Files are sorted by
// (dataset, family, metric, seed, T) and written with full double precision,
// so identical runs produce byte-identical files.
struct CurveRow {
  std::string dataset;
  std::string family;
  std::string metric;
  std::uint64_t seed = 0;
  int t = 0;
  double value = 0.0;
  bool defined = true;
};

std::string format_double(double x);  // shortest round-trip-exact decimal
void write_curve_csv(const std::string& path, std::vector<CurveRow> rows);
std::vector<CurveRow> read_curve_csv(const std::string& path);

// Groups defined rows into per-(dataset, family, metric, seed) curves.
std::vector<Curve> curves_from_rows(const std::vector<CurveRow>& rows);

// Exit statuses shared by the pipeline entry points: 0 full success,
// 1 partial failure (some cells failed, results for the rest preserved),
// 2 unusable configuration or input.
inline constexpr int exit_ok = 0;
inline constexpr int exit_partial = 1;
inline constexpr int exit_config = 2;

// Training specification for one scan cell. The sparse families' absolute
// smoothing/sparsing pseudocounts are derived here from the configured
// fractions and the corpus statistics (mean count per (word, topic) cell).
ModelSpec cell_spec(const FamilyConfig& family, const Corpus& corpus, int t, std::uint64_t seed,
                    int iterations);

// Loads every configured dataset, validates it, and writes a summary table
// (documents, vocabulary size, nonzeros, tokens, dropped documents) to
// ingest.csv in the output directory.
int cmd_ingest(const ScanConfig& config, std::ostream& log);

// The full measurement sweep: for every (dataset, family, T, seed) cell,
// train on the leading train_fraction of documents, fold in the rest,
// compute the configured metrics, and append rows to
// curves/<dataset>__<family>.csv. Cells already present in the curve files
// are skipped unless force is set. Derived rpc rows are recomputed from the
// holdout-perplexity rows at the end of each (dataset, family) unit.
int cmd_scan(const ScanConfig& config, bool force, std::ostream& log);

// Subsample-stability sweep: writes instability rows (metric "instability")
// to curves/<dataset>__<family>__stability.csv over the stability T grid.
int cmd_stability(const ScanConfig& config, bool force, std::ostream& log);

// Reads every curve file under curves/, classifies each curve's optimum,
// and writes verdicts/<dataset>__<family>.json, performance.csv,
// performance.txt, and per-curve plot data under plots/.
int cmd_report(const ScanConfig& config, std::ostream& log);

struct SynthArgs {
  int num_topics = 5;
  int vocab_size = 200;
  int num_docs = 500;
  int doc_length = 100;
  double concentration = 0.05;
  std::uint64_t seed = 0;
  std::string out_dir = "synth";
};

// Samples a corpus with known structure and writes docword.txt/vocab.txt,
// the generating phi.csv/theta.csv, and meta.json recording the expected
// range [num_topics, num_topics] for later evaluation.
int cmd_synth(const SynthArgs& args, std::ostream& log);

// Verdict JSON helpers (records {metric, family, seed, band, category,
// boundary_hit}; one file per (dataset, family)).
void write_verdicts_json(const std::string& path, const std::vector<VerdictRecord>& records);
std::vector<VerdictRecord> read_verdicts_json(const std::string& path, const std::string& dataset);

// Ground-truth ranges for the report: config-registered ranges first, then
// the built-in registry for known dataset names.
std::map<std::string, GroundTruth> gather_ground_truth(const ScanConfig& config);

}  // namespace tscan
