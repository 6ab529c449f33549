#include "tscan/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "tscan/metrics.hpp"

namespace tscan {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  for (const char c : value) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!item.empty()) out.push_back(std::exchange(item, {}));
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

bool safe_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

struct Parser {
  std::string origin;
  long line_no = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + message);
  }

  long parse_int(const std::string& value) const {
    std::size_t used = 0;
    long result = 0;
    try {
      result = std::stol(value, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + value + "'");
    }
    if (used != value.size()) fail("expected an integer, got '" + value + "'");
    return result;
  }

  double parse_real(const std::string& value) const {
    std::size_t used = 0;
    double result = 0.0;
    try {
      result = std::stod(value, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + value + "'");
    }
    if (used != value.size()) fail("expected a number, got '" + value + "'");
    return result;
  }

  bool parse_bool(const std::string& value) const {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    fail("expected a boolean, got '" + value + "'");
  }
};

}  // namespace

std::vector<int> ScanConfig::t_grid() const {
  std::vector<int> grid;
  for (int t = t_min; t <= t_max; t += t_step) grid.push_back(t);
  return grid;
}

std::vector<int> ScanConfig::stability_t_grid() const {
  const int lo = stability.t_min.value_or(t_min);
  const int hi = stability.t_max.value_or(t_max);
  const int step = stability.t_step.value_or(t_step);
  std::vector<int> grid;
  for (int t = lo; t <= hi; t += step) grid.push_back(t);
  return grid;
}

void ScanConfig::validate() const {
  if (datasets.empty()) throw ConfigError("config: no datasets defined");
  if (families.empty()) throw ConfigError("config: no model families defined");
  if (t_min < 1) throw ConfigError("config: t_min must be >= 1");
  if (t_step < 1) throw ConfigError("config: t_step must be >= 1");
  if (t_min >= t_max) throw ConfigError("config: t_min must be below t_max");
  if (seeds.empty()) throw ConfigError("config: seeds must be nonempty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("config: duplicate seeds");
  }
  if (iterations < 1) throw ConfigError("config: iterations must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("config: train_fraction must lie in (0, 1)");
  }
  if (fold_in_iterations < 1) throw ConfigError("config: fold_in_iterations must be >= 1");
  if (!(alpha >= 0.0)) throw ConfigError("config: alpha must be >= 0");
  if (top_k < 1) throw ConfigError("config: top_k must be >= 1");
  if (workers < 0) throw ConfigError("config: workers must be >= 0");
  if (out_dir.empty()) throw ConfigError("config: output directory must be set");

  std::set<std::string> names;
  for (const auto& dataset : datasets) {
    if (!safe_name(dataset.name)) {
      throw ConfigError("config: dataset name '" + dataset.name +
                        "' must use only letters, digits, '_', '.', '-'");
    }
    if (!names.insert(dataset.name).second) {
      throw ConfigError("config: duplicate dataset name '" + dataset.name + "'");
    }
    if (dataset.docword_path.empty() || dataset.vocab_path.empty()) {
      throw ConfigError("config: dataset '" + dataset.name + "' is missing docword/vocab paths");
    }
    if (dataset.expected && dataset.expected->first > dataset.expected->second) {
      throw ConfigError("config: dataset '" + dataset.name + "' has an inverted expected range");
    }
  }
  names.clear();
  for (const auto& family : families) {
    if (!safe_name(family.name)) {
      throw ConfigError("config: family name '" + family.name +
                        "' must use only letters, digits, '_', '.', '-'");
    }
    if (!names.insert(family.name).second) {
      throw ConfigError("config: duplicate family name '" + family.name + "'");
    }
    if (family.tau < 0.0 || family.smooth_fraction < 0.0 || family.sparse_fraction < 0.0 ||
        family.background_topics < 0) {
      throw ConfigError("config: family '" + family.name + "' has negative hyperparameters");
    }
    const bool sparse = family.family == ModelFamily::sparse ||
                        family.family == ModelFamily::sparse_decorrelated;
    if (sparse && family.background_topics >= t_min) {
      throw ConfigError("config: family '" + family.name +
                        "' needs background topics below t_min");
    }
  }
  for (const auto& metric : metrics) {
    if (!is_metric_name(metric)) throw ConfigError("config: unknown metric '" + metric + "'");
  }
  if (stability.enabled) {
    try {
      stability.config.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    const auto grid = stability_t_grid();
    if (grid.empty()) throw ConfigError("config: stability T grid is empty");
    if (grid.front() < 1) throw ConfigError("config: stability t_min must be >= 1");
  }
}

ScanConfig parse_config_text(const std::string& text, const std::string& origin) {
  ScanConfig config;
  Parser parser{origin};

  enum class Section { top, dataset, family, stability };
  Section section = Section::top;
  DatasetConfig* dataset = nullptr;
  FamilyConfig* family = nullptr;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++parser.line_no;
    const std::size_t comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parser.fail("unterminated section header");
      const std::string header = trim(line.substr(1, line.size() - 2));
      const std::size_t space = header.find(' ');
      const std::string kind = space == std::string::npos ? header : header.substr(0, space);
      const std::string name =
          space == std::string::npos ? "" : trim(header.substr(space + 1));
      if (kind == "dataset") {
        if (name.empty()) parser.fail("dataset section needs a name: [dataset NAME]");
        config.datasets.push_back(DatasetConfig{name, "", "", std::nullopt});
        dataset = &config.datasets.back();
        section = Section::dataset;
      } else if (kind == "family") {
        if (name.empty()) parser.fail("family section needs a name: [family NAME]");
        config.families.push_back(FamilyConfig{name, ModelFamily::plsa, 0.0, 0.1, 0.1, 1});
        family = &config.families.back();
        section = Section::family;
      } else if (kind == "stability") {
        if (!name.empty()) parser.fail("stability section takes no name");
        section = Section::stability;
      } else {
        parser.fail("unknown section '" + kind + "'");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) parser.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parser.fail("empty key");
    if (value.empty()) parser.fail("empty value for '" + key + "'");

    switch (section) {
      case Section::top:
        if (key == "out") {
          config.out_dir = value;
        } else if (key == "workers") {
          config.workers = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_min") {
          config.t_min = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_max") {
          config.t_max = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_step") {
          config.t_step = static_cast<int>(parser.parse_int(value));
        } else if (key == "seeds") {
          config.seeds.clear();
          for (const auto& item : split_list(value)) {
            config.seeds.push_back(static_cast<std::uint64_t>(parser.parse_int(item)));
          }
        } else if (key == "iterations") {
          config.iterations = static_cast<int>(parser.parse_int(value));
        } else if (key == "train_fraction") {
          config.train_fraction = parser.parse_real(value);
        } else if (key == "fold_in_iterations") {
          config.fold_in_iterations = static_cast<int>(parser.parse_int(value));
        } else if (key == "alpha") {
          config.alpha = parser.parse_real(value);
        } else if (key == "top_k") {
          config.top_k = static_cast<int>(parser.parse_int(value));
        } else if (key == "metrics") {
          config.metrics.clear();
          const auto items = split_list(value);
          if (!(items.size() == 1 && items.front() == "all")) config.metrics = items;
        } else if (key == "dump_models") {
          config.dump_models = parser.parse_bool(value);
        } else {
          parser.fail("unknown key '" + key + "'");
        }
        break;

      case Section::dataset:
        if (key == "docword") {
          dataset->docword_path = value;
        } else if (key == "vocab") {
          dataset->vocab_path = value;
        } else if (key == "expected") {
          const auto items = split_list(value);
          if (items.empty() || items.size() > 2) parser.fail("expected takes 'lo [hi]'");
          const int lo = static_cast<int>(parser.parse_int(items.front()));
          const int hi = static_cast<int>(parser.parse_int(items.back()));
          dataset->expected = {lo, hi};
        } else {
          parser.fail("unknown dataset key '" + key + "'");
        }
        break;

      case Section::family:
        if (key == "type") {
          const auto parsed = family_from_name(value);
          if (!parsed) parser.fail("unknown family type '" + value + "'");
          family->family = *parsed;
        } else if (key == "tau") {
          family->tau = parser.parse_real(value);
        } else if (key == "smooth") {
          family->smooth_fraction = parser.parse_real(value);
        } else if (key == "sparse") {
          family->sparse_fraction = parser.parse_real(value);
        } else if (key == "background") {
          family->background_topics = static_cast<int>(parser.parse_int(value));
        } else {
          parser.fail("unknown family key '" + key + "'");
        }
        break;

      case Section::stability:
        if (key == "enabled") {
          config.stability.enabled = parser.parse_bool(value);
        } else if (key == "subsamples") {
          config.stability.config.subsamples = static_cast<int>(parser.parse_int(value));
        } else if (key == "fraction") {
          config.stability.config.fraction = parser.parse_real(value);
        } else if (key == "base_seed") {
          config.stability.config.base_seed =
              static_cast<std::uint64_t>(parser.parse_int(value));
        } else if (key == "top_k") {
          config.stability.config.top_k = static_cast<int>(parser.parse_int(value));
        } else if (key == "max_pairs") {
          config.stability.config.max_pairs = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_min") {
          config.stability.t_min = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_max") {
          config.stability.t_max = static_cast<int>(parser.parse_int(value));
        } else if (key == "t_step") {
          config.stability.t_step = static_cast<int>(parser.parse_int(value));
        } else {
          parser.fail("unknown stability key '" + key + "'");
        }
        break;
    }
  }

  config.validate();
  return config;
}

ScanConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace tscan
