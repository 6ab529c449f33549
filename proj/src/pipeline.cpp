#include "tscan/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "tscan/stability.hpp"
#include "tscan/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tscan {

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

namespace {

double parse_double_field(const std::string& field, const std::string& path, long line) {
  // std::from_chars(double) in libstdc++ handles "nan"/"inf" spellings too.
  double value = 0.0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc{} || result.ptr != field.data() + field.size()) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad numeric field '" +
                             field + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(std::exchange(field, {}));
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

constexpr const char* kCurveHeader = "dataset,family,metric,seed,T,value,defined";

auto row_key(const CurveRow& row) {
  return std::tie(row.dataset, row.family, row.metric, row.seed, row.t);
}

}  // namespace

void write_curve_csv(const std::string& path, std::vector<CurveRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const CurveRow& a, const CurveRow& b) { return row_key(a) < row_key(b); });
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file: " + path);
  out << kCurveHeader << '\n';
  for (const auto& row : rows) {
    out << row.dataset << ',' << row.family << ',' << row.metric << ',' << row.seed << ','
        << row.t << ',' << format_double(row.value) << ',' << (row.defined ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing curve file: " + path);
}

std::vector<CurveRow> read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path);
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty curve file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveHeader) throw std::runtime_error(path + ": unexpected header '" + line + "'");

  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 7 fields");
    }
    CurveRow row;
    row.dataset = fields[0];
    row.family = fields[1];
    row.metric = fields[2];
    row.seed = static_cast<std::uint64_t>(
        parse_double_field(fields[3], path, line_no));
    row.t = static_cast<int>(parse_double_field(fields[4], path, line_no));
    row.value = parse_double_field(fields[5], path, line_no);
    row.defined = fields[6] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Curve> curves_from_rows(const std::vector<CurveRow>& rows) {
  std::map<std::tuple<std::string, std::string, std::string, std::uint64_t>,
           std::vector<CurvePoint>>
      groups;
  for (const auto& row : rows) {
    if (!row.defined || !std::isfinite(row.value)) continue;
    groups[{row.dataset, row.family, row.metric, row.seed}].push_back({row.t, row.value});
  }
  std::vector<Curve> curves;
  for (auto& [key, points] : groups) {
    Curve curve;
    curve.metric = std::get<2>(key);
    curve.family = std::get<1>(key);
    curve.seed = std::get<3>(key);
    curve.direction = metric_direction(curve.metric);
    std::sort(points.begin(), points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.t < b.t; });
    curve.points = std::move(points);
    curve.validate();
    curves.push_back(std::move(curve));
  }
  return curves;
}

// ---- Shared orchestration helpers ---------------------------------------------

namespace {

int effective_workers(int configured) {
  return configured > 0 ? configured : omp_get_max_threads();
}

std::string cell_file_name(const std::string& dataset, const std::string& family,
                           const char* suffix) {
  return dataset + "__" + family + suffix;
}

struct CellFailure {
  std::string dataset;
  std::string family;
  int t = 0;
  std::uint64_t seed = 0;
  std::string error;
};

void write_failures(const fs::path& path, const std::vector<CellFailure>& failures) {
  if (failures.empty()) {
    fs::remove(path);
    return;
  }
  std::ofstream out(path);
  for (const auto& f : failures) {
    out << f.dataset << ' ' << f.family << " T=" << f.t << " seed=" << f.seed << ": " << f.error
        << '\n';
  }
}

void dump_model_csv(const TopicModel& model, const fs::path& phi_path, const fs::path& theta_path) {
  const auto write = [](const fs::path& path, const Mat& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path.string());
    for (std::size_t t = 0; t < m.cols(); ++t) out << (t ? "," : "") << 't' << t;
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        out << (c ? "," : "") << format_double(m(r, c));
      }
      out << '\n';
    }
  };
  write(phi_path, model.phi);
  write(theta_path, model.theta);
}

}  // namespace

ModelSpec cell_spec(const FamilyConfig& family, const Corpus& corpus, int t, std::uint64_t seed,
                    int iterations) {
  ModelSpec spec;
  spec.family = family.family;
  spec.num_topics = t;
  spec.seed = seed;
  spec.iterations = iterations;
  spec.tau = family.tau;
  if (family.family == ModelFamily::sparse || family.family == ModelFamily::sparse_decorrelated) {
    // The configured smoothing/sparsing strengths are fractions of the mean
    // count per (word, topic) cell; convert to absolute pseudocounts here.
    const double mean_count = static_cast<double>(corpus.total) /
                              (static_cast<double>(corpus.vocab_size()) * static_cast<double>(t));
    spec.smooth_beta = family.smooth_fraction * mean_count;
    spec.sparse_beta = family.sparse_fraction * mean_count;
    spec.background_topics = family.background_topics;
  }
  return spec;
}

// ---- ingest --------------------------------------------------------------------

int cmd_ingest(const ScanConfig& config, std::ostream& log) {
  fs::create_directories(config.out_dir);
  std::ofstream summary(fs::path(config.out_dir) / "ingest.csv");
  summary << "dataset,documents,vocabulary,nonzeros,tokens,dropped\n";

  int failures = 0;
  for (const auto& dataset : config.datasets) {
    try {
      std::vector<std::int64_t> dropped;
      const Corpus corpus = load_corpus(dataset.docword_path, dataset.vocab_path, &dropped);
      summary << dataset.name << ',' << corpus.num_docs() << ',' << corpus.vocab_size() << ','
              << corpus.nnz() << ',' << corpus.total << ',' << dropped.size() << '\n';
      log << "ingest " << dataset.name << ": " << corpus.num_docs() << " documents, "
          << corpus.vocab_size() << " tokens in vocabulary, " << corpus.total << " tokens total";
      if (!dropped.empty()) log << ", dropped " << dropped.size() << " empty documents";
      log << '\n';
    } catch (const std::exception& e) {
      ++failures;
      log << "ingest " << dataset.name << " FAILED: " << e.what() << '\n';
    }
  }
  return failures == 0 ? exit_ok : exit_partial;
}

// ---- scan ----------------------------------------------------------------------

int cmd_scan(const ScanConfig& config, bool force, std::ostream& log) {
  const fs::path out_dir(config.out_dir);
  const fs::path curve_dir = out_dir / "curves";
  fs::create_directories(curve_dir);
  if (config.families.empty()) {
    log << "scan: no families configured\n";
    return exit_config;
  }

  const std::vector<int> grid = config.t_grid();
  std::vector<CellFailure> failures;

  for (const auto& dataset : config.datasets) {
    Corpus full;
    try {
      full = load_corpus(dataset.docword_path, dataset.vocab_path);
    } catch (const std::exception& e) {
      failures.push_back({dataset.name, "*", 0, 0, e.what()});
      log << "scan " << dataset.name << " FAILED to load: " << e.what() << '\n';
      continue;
    }

    Corpus train_set, heldout_set;
    try {
      std::tie(train_set, heldout_set) = split_corpus(full, config.train_fraction);
    } catch (const std::exception& e) {
      failures.push_back({dataset.name, "*", 0, 0, e.what()});
      log << "scan " << dataset.name << " FAILED to split: " << e.what() << '\n';
      continue;
    }
    const CooccurrenceIndex cooccurrence(train_set);

    for (const auto& family : config.families) {
      const fs::path curve_path = curve_dir / cell_file_name(dataset.name, family.name, ".csv");
      std::vector<CurveRow> rows;
      if (!force && fs::exists(curve_path)) rows = read_curve_csv(curve_path.string());

      // A cell is done when any non-derived row for its (seed, T) exists.
      std::set<std::pair<std::uint64_t, int>> done;
      for (const auto& row : rows) {
        if (row.metric != "rpc") done.insert({row.seed, row.t});
      }

      struct Cell {
        int t;
        std::uint64_t seed;
      };
      std::vector<Cell> cells;
      for (const std::uint64_t seed : config.seeds) {
        for (const int t : grid) {
          if (!done.count({seed, t})) cells.push_back({t, seed});
        }
      }

      const bool want_rpc = config.metrics.empty() ||
                            std::count(config.metrics.begin(), config.metrics.end(), "rpc") > 0;
      std::vector<std::string> cell_metrics = config.metrics;
      if (want_rpc && !cell_metrics.empty() &&
          !std::count(cell_metrics.begin(), cell_metrics.end(), "holdout-perplexity")) {
        // rpc is derived from the holdout-perplexity curve.
        cell_metrics.push_back("holdout-perplexity");
      }

      std::vector<std::vector<CurveRow>> cell_rows(cells.size());
      std::vector<std::string> cell_errors(cells.size());
      std::vector<TopicModel> cell_models(config.dump_models ? cells.size() : 0);

      MetricContext context;
      context.train = &train_set;
      context.heldout = &heldout_set;
      context.cooccurrence = &cooccurrence;
      context.fold_in_iterations = config.fold_in_iterations;
      context.top_k = config.top_k;

#pragma omp parallel for num_threads(effective_workers(config.workers)) schedule(dynamic)
      for (std::size_t i = 0; i < cells.size(); ++i) {
        try {
          const ModelSpec spec =
              cell_spec(family, train_set, cells[i].t, cells[i].seed, config.iterations);
          const TopicModel model = train(spec, train_set);
          for (const MetricValue& metric : compute_metrics(model, context, cell_metrics)) {
            cell_rows[i].push_back({dataset.name, family.name, metric.name, cells[i].seed,
                                    cells[i].t, metric.value, metric.defined});
          }
          if (config.dump_models) cell_models[i] = model;
        } catch (const std::exception& e) {
          cell_errors[i] = e.what();
        }
      }

      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cell_errors[i].empty()) {
          failures.push_back(
              {dataset.name, family.name, cells[i].t, cells[i].seed, cell_errors[i]});
          log << "scan " << dataset.name << '/' << family.name << " T=" << cells[i].t
              << " seed=" << cells[i].seed << " FAILED: " << cell_errors[i] << '\n';
          continue;
        }
        rows.insert(rows.end(), cell_rows[i].begin(), cell_rows[i].end());
      }

      if (want_rpc) {
        // Drop stale derived rows and recompute them from the current
        // holdout-perplexity curves.
        std::erase_if(rows, [](const CurveRow& row) { return row.metric == "rpc"; });
        std::map<std::uint64_t, std::vector<std::pair<int, double>>> perplexity_by_seed;
        for (const auto& row : rows) {
          if (row.metric == "holdout-perplexity" && row.defined) {
            perplexity_by_seed[row.seed].push_back({row.t, row.value});
          }
        }
        for (auto& [seed, points] : perplexity_by_seed) {
          std::sort(points.begin(), points.end());
          if (points.size() < 2) continue;
          for (const auto& [t, value] : rpc(points)) {
            rows.push_back({dataset.name, family.name, "rpc", seed, t, value, true});
          }
        }
      }

      write_curve_csv(curve_path.string(), std::move(rows));

      if (config.dump_models) {
        const fs::path model_dir = out_dir / "models";
        fs::create_directories(model_dir);
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (!cell_errors[i].empty()) continue;
          char stem[256];
          std::snprintf(stem, sizeof stem, "%s__%s__t%03d__s%llu", dataset.name.c_str(),
                        family.name.c_str(), cells[i].t,
                        static_cast<unsigned long long>(cells[i].seed));
          dump_model_csv(cell_models[i], model_dir / (std::string(stem) + ".phi.csv"),
                         model_dir / (std::string(stem) + ".theta.csv"));
        }
      }
      log << "scan " << dataset.name << '/' << family.name << ": " << cells.size()
          << " cells computed\n";
    }
  }

  write_failures(out_dir / "scan_failures.txt", failures);
  return failures.empty() ? exit_ok : exit_partial;
}

// ---- stability -------------------------------------------------------------------

int cmd_stability(const ScanConfig& config, bool force, std::ostream& log) {
  const fs::path out_dir(config.out_dir);
  const fs::path curve_dir = out_dir / "curves";
  fs::create_directories(curve_dir);
  if (config.families.empty()) {
    log << "stability: no families configured\n";
    return exit_config;
  }
  if (!config.stability.enabled) {
    log << "stability: disabled in config\n";
    return exit_ok;
  }

  const std::vector<int> grid = config.stability_t_grid();
  const std::uint64_t seed = config.seeds.front();
  std::vector<CellFailure> failures;

  for (const auto& dataset : config.datasets) {
    Corpus full;
    try {
      full = load_corpus(dataset.docword_path, dataset.vocab_path);
    } catch (const std::exception& e) {
      failures.push_back({dataset.name, "*", 0, 0, e.what()});
      log << "stability " << dataset.name << " FAILED to load: " << e.what() << '\n';
      continue;
    }

    for (const auto& family : config.families) {
      const fs::path curve_path =
          curve_dir / cell_file_name(dataset.name, family.name, "__stability.csv");
      std::vector<CurveRow> rows;
      if (!force && fs::exists(curve_path)) rows = read_curve_csv(curve_path.string());

      std::set<int> done;
      for (const auto& row : rows) done.insert(row.t);
      std::vector<int> todo;
      for (const int t : grid) {
        if (!done.count(t)) todo.push_back(t);
      }

      std::vector<CurveRow> new_rows(todo.size());
      std::vector<std::string> errors(todo.size());
#pragma omp parallel for num_threads(effective_workers(config.workers)) schedule(dynamic)
      for (std::size_t i = 0; i < todo.size(); ++i) {
        try {
          const ModelSpec spec = cell_spec(family, full, todo[i], seed, config.iterations);
          const InstabilityResult result =
              instability(full, spec, config.stability.config, todo[i]);
          new_rows[i] = {dataset.name, family.name, "instability", seed, todo[i], result.value,
                         true};
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
      for (std::size_t i = 0; i < todo.size(); ++i) {
        if (!errors[i].empty()) {
          failures.push_back({dataset.name, family.name, todo[i], seed, errors[i]});
          log << "stability " << dataset.name << '/' << family.name << " T=" << todo[i]
              << " FAILED: " << errors[i] << '\n';
          continue;
        }
        rows.push_back(new_rows[i]);
      }
      write_curve_csv(curve_path.string(), std::move(rows));
      log << "stability " << dataset.name << '/' << family.name << ": " << todo.size()
          << " points computed\n";
    }
  }

  write_failures(out_dir / "stability_failures.txt", failures);
  return failures.empty() ? exit_ok : exit_partial;
}

// ---- report --------------------------------------------------------------------

void write_verdicts_json(const std::string& path, const std::vector<VerdictRecord>& records) {
  json array = json::array();
  for (const auto& record : records) {
    json entry;
    entry["metric"] = record.metric;
    entry["family"] = record.family;
    entry["seed"] = record.seed;
    entry["band"] = record.verdict.band;
    entry["category"] = category_name(record.verdict.category);
    entry["boundary_hit"] = record.verdict.boundary_hit;
    array.push_back(std::move(entry));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write verdict file: " + path);
  out << array.dump(2) << '\n';
}

std::vector<VerdictRecord> read_verdicts_json(const std::string& path, const std::string& dataset) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open verdict file: " + path);
  json array = json::parse(in);
  std::vector<VerdictRecord> records;
  for (const auto& entry : array) {
    VerdictRecord record;
    record.dataset = dataset;
    record.metric = entry.at("metric").get<std::string>();
    record.family = entry.at("family").get<std::string>();
    record.seed = entry.at("seed").get<std::uint64_t>();
    record.verdict.band = entry.at("band").get<std::vector<int>>();
    const auto category = category_from_name(entry.at("category").get<std::string>());
    if (!category) throw std::runtime_error(path + ": unknown category");
    record.verdict.category = *category;
    record.verdict.boundary_hit = entry.at("boundary_hit").get<bool>();
    records.push_back(std::move(record));
  }
  return records;
}

std::map<std::string, GroundTruth> gather_ground_truth(const ScanConfig& config) {
  std::map<std::string, GroundTruth> truths;
  for (const auto& dataset : config.datasets) {
    if (dataset.expected) {
      truths[dataset.name] = GroundTruth{dataset.name, dataset.expected->first,
                                         dataset.expected->second, config.t_min, config.t_max};
    } else if (const auto builtin = find_ground_truth(dataset.name)) {
      truths[dataset.name] = *builtin;
    }
  }
  return truths;
}

int cmd_report(const ScanConfig& config, std::ostream& log) {
  const fs::path out_dir(config.out_dir);
  const fs::path curve_dir = out_dir / "curves";

  std::vector<std::string> curve_files;
  if (fs::exists(curve_dir)) {
    for (const auto& entry : fs::directory_iterator(curve_dir)) {
      if (entry.path().extension() == ".csv") curve_files.push_back(entry.path().string());
    }
  }
  std::sort(curve_files.begin(), curve_files.end());
  if (curve_files.empty()) {
    log << "report: no curve files under " << curve_dir.string() << " (run scan first)\n";
  }

  std::vector<CurveRow> rows;
  std::map<std::string, std::vector<CurveRow>> rows_by_dataset;
  for (const auto& file : curve_files) {
    for (auto& row : read_curve_csv(file)) {
      rows_by_dataset[row.dataset].push_back(row);
      rows.push_back(std::move(row));
    }
  }

  // Missing curves are reported but do not block the rest of the report.
  for (const auto& dataset : config.datasets) {
    if (!rows_by_dataset.count(dataset.name)) {
      log << "report: no curves for dataset " << dataset.name << '\n';
    }
  }

  const fs::path verdict_dir = out_dir / "verdicts";
  const fs::path plot_dir = out_dir / "plots";
  fs::create_directories(verdict_dir);
  fs::create_directories(plot_dir);

  std::vector<VerdictRecord> all_records;
  std::map<std::pair<std::string, std::string>, std::vector<VerdictRecord>> records_by_file;
  for (const auto& [dataset, dataset_rows] : rows_by_dataset) {
    for (const auto& curve : curves_from_rows(dataset_rows)) {
      VerdictRecord record;
      record.dataset = dataset;
      record.family = curve.family;
      record.metric = curve.metric;
      record.seed = curve.seed;
      record.verdict = classify(curve, config.alpha);
      records_by_file[{dataset, curve.family}].push_back(record);
      all_records.push_back(std::move(record));

      // Plot-ready two-column data per curve.
      char name[256];
      std::snprintf(name, sizeof name, "%s__%s__%s__s%llu.dat", dataset.c_str(),
                    curve.family.c_str(), curve.metric.c_str(),
                    static_cast<unsigned long long>(curve.seed));
      std::ofstream plot(plot_dir / name);
      for (const auto& point : curve.points) {
        plot << point.t << ' ' << format_double(point.value) << '\n';
      }
    }
  }

  for (auto& [key, records] : records_by_file) {
    std::sort(records.begin(), records.end(), [](const VerdictRecord& a, const VerdictRecord& b) {
      return std::tie(a.metric, a.seed) < std::tie(b.metric, b.seed);
    });
    write_verdicts_json((verdict_dir / cell_file_name(key.first, key.second, ".json")).string(),
                        records);
  }

  // Majority readability category per (dataset, family, metric) across seeds.
  {
    std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, int>> votes;
    for (const auto& record : all_records) {
      ++votes[{record.dataset, record.family, record.metric}]
             [category_name(record.verdict.category)];
    }
    std::ofstream out(out_dir / "verdict_summary.csv");
    out << "dataset,family,metric,majority_category\n";
    for (const auto& [key, categories] : votes) {
      // Highest vote count; ties resolved by category name order.
      const auto best = std::max_element(
          categories.begin(), categories.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
          << best->first << '\n';
    }
  }

  const auto truths = gather_ground_truth(config);
  const auto table = performance_table(all_records, truths);
  {
    std::ofstream out(out_dir / "performance.csv");
    out << "metric,jaccard,informativity,expected\n";
    for (const auto& row : table) {
      out << row.metric << ',' << (row.jaccard_defined ? format_double(row.jaccard) : "nan")
          << ',' << format_double(row.informativity) << ','
          << (row.expected_defined ? format_double(row.expected) : "nan") << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "performance.txt");
    out << format_performance_table(table);
  }

  log << "report: " << all_records.size() << " verdicts over " << records_by_file.size()
      << " (dataset, family) groups; performance table has " << table.size() << " metrics\n";
  return exit_ok;
}

// ---- synth ---------------------------------------------------------------------

int cmd_synth(const SynthArgs& args, std::ostream& log) {
  try {
    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);
    const SyntheticCorpus synthetic =
        synthesize_corpus(args.num_topics, args.vocab_size, args.num_docs, args.doc_length,
                          args.concentration, args.seed);
    save_corpus(synthetic.corpus, (out_dir / "docword.txt").string(),
                (out_dir / "vocab.txt").string());

    const auto write_matrix = [](const fs::path& path, const Mat& m) {
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << 't' << c;
      out << '\n';
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
          out << (c ? "," : "") << format_double(m(r, c));
        }
        out << '\n';
      }
    };
    write_matrix(out_dir / "phi.csv", synthetic.phi);
    write_matrix(out_dir / "theta.csv", synthetic.theta);

    json meta;
    meta["num_topics"] = args.num_topics;
    meta["expected"] = {args.num_topics, args.num_topics};
    meta["vocab_size"] = args.vocab_size;
    meta["num_docs"] = args.num_docs;
    meta["doc_length"] = args.doc_length;
    meta["concentration"] = args.concentration;
    meta["seed"] = args.seed;
    std::ofstream meta_out(out_dir / "meta.json");
    meta_out << meta.dump(2) << '\n';

    log << "synth: wrote " << synthetic.corpus.num_docs() << " documents to " << args.out_dir
        << " (expected topic range [" << args.num_topics << ", " << args.num_topics << "])\n";
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    log << "synth: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    log << "synth: " << e.what() << '\n';
    return exit_partial;
  }
}

}  // namespace tscan
