#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tscan/model.hpp"
#include "tscan/stability.hpp"

namespace tscan {

// Thrown for malformed or inconsistent configuration; the CLI maps it to
// exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetConfig {
  std::string name;  // filename-safe: [A-Za-z0-9_.-]
  std::string docword_path;
  std::string vocab_path;
  std::optional<std::pair<int, int>> expected;  // ground-truth T range
};

// One model family entry. `name` labels output rows (several entries may
// share a family type with different hyperparameters, e.g. decorrelation
// strengths). smooth/sparse are fractions of the mean count n/(W*T); the
// absolute pseudocounts are derived per dataset when the scan runs.
struct FamilyConfig {
  std::string name;
  ModelFamily family = ModelFamily::plsa;
  double tau = 0.0;
  double smooth_fraction = 0.1;
  double sparse_fraction = 0.1;
  int background_topics = 1;
};

struct StabilitySection {
  bool enabled = true;
  StabilityConfig config;
  // Optional override of the scan's T grid.
  std::optional<int> t_min, t_max, t_step;
};

struct ScanConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<FamilyConfig> families;
  int t_min = 2;
  int t_max = 10;
  int t_step = 1;
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  int iterations = 40;
  double train_fraction = 0.8;
  int fold_in_iterations = 20;
  double alpha = 0.07;
  int top_k = 10;
  std::vector<std::string> metrics;  // empty = all
  bool dump_models = false;
  std::string out_dir = "out";
  int workers = 0;  // 0 = all available cores
  StabilitySection stability;

  std::vector<int> t_grid() const;            // t_min, t_min+t_step, ..., <= t_max
  std::vector<int> stability_t_grid() const;  // stability override or t_grid()

  // Throws ConfigError on violated constraints (empty seeds, bad ranges,
  // duplicate names, unknown metric identifiers, ...).
  void validate() const;
};

// Parses the declarative key = value / [section NAME] format described in
// the README. Throws ConfigError with a line number on malformed input.
ScanConfig parse_config(const std::string& path);
ScanConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace tscan
