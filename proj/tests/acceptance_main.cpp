// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit 1 on any
// failure. Each criterion is checked against independently derived values
// (hand computations, brute-force oracles, closed forms), never against the
// library's own output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tscan/config.hpp"
#include "tscan/corpus.hpp"
#include "tscan/evaluation.hpp"
#include "tscan/metrics.hpp"
#include "tscan/model.hpp"
#include "tscan/optima.hpp"
#include "tscan/pipeline.hpp"
#include "tscan/stability.hpp"
#include "tscan/trainer.hpp"

namespace fs = std::filesystem;
using namespace tscan;

namespace {

using Failures = std::vector<std::string>;

void expect(Failures& failures, bool condition, const std::string& message) {
  if (!condition) failures.push_back(message);
}

void expect_near(Failures& failures, const std::string& label, double got, double want,
                 double tol) {
  if (!(std::abs(got - want) <= tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << label << ": got " << got << ", want " << want << " +- " << tol;
    failures.push_back(msg.str());
  }
}

std::string format_seconds(double s) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f s", s);
  return buffer;
}

// ---- small builders ----------------------------------------------------------

TopicModel make_model(const Mat& phi) {
  TopicModel model;
  model.spec.num_topics = static_cast<int>(phi.cols());
  model.phi = phi;
  model.theta = Mat(1, phi.cols(), 1.0 / static_cast<double>(phi.cols()));
  model.n_wt = Mat(phi.rows(), phi.cols());
  return model;
}

Corpus trivial_corpus(int num_docs, int vocab_size) {
  Vocabulary vocab;
  for (int w = 0; w < vocab_size; ++w) vocab.tokens.push_back("w" + std::to_string(w));
  std::vector<DocEntries> docs(num_docs);
  for (int d = 0; d < num_docs; ++d) {
    docs[d].id = d + 1;
    docs[d].entries.push_back({0, 1});
  }
  return Corpus::from_documents(vocab, docs);
}

Mat random_column_stochastic(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  Mat m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, c) = unit(rng);
      sum += m(r, c);
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) /= sum;
  }
  return m;
}

Curve make_curve(const std::string& metric, Direction direction,
                 const std::vector<double>& values, int t_start = 2) {
  Curve curve;
  curve.metric = metric;
  curve.family = "fam";
  curve.direction = direction;
  for (std::size_t i = 0; i < values.size(); ++i) {
    curve.points.push_back({t_start + static_cast<int>(i), values[i]});
  }
  return curve;
}

// Corpus and scan results shared between the recovery and stability checks.
struct SharedState {
  std::optional<Corpus> recovery_corpus;  // T_true = 5, W = 200, D = 500, len = 100

  const Corpus& recovery() {
    if (!recovery_corpus) {
      recovery_corpus = synthesize_corpus(5, 200, 500, 100, 0.05, 1).corpus;
    }
    return *recovery_corpus;
  }
};

SharedState shared;

// ---- criterion 1: information-criterion hand values ---------------------------

void criterion_information_criteria(Failures& failures) {
  // W = 3, T = 2, D = 10, log-likelihood -100; phi chosen with exactly five
  // entries above the sparsity floor.
  Mat phi(3, 2);
  phi(0, 0) = 0.5;
  phi(1, 0) = 0.5;
  phi(2, 0) = 0.0;
  phi(0, 1) = 0.2;
  phi(1, 1) = 0.3;
  phi(2, 1) = 0.5;
  TopicModel model = make_model(phi);
  model.log_likelihood = -100.0;
  const Corpus corpus = trivial_corpus(10, 3);

  const MetricValue aic = information_criterion(model, corpus, IcKind::aic, false);
  const MetricValue bic = information_criterion(model, corpus, IcKind::bic, false);
  const MetricValue mdl = information_criterion(model, corpus, IcKind::mdl, false);
  const MetricValue aic_sparse = information_criterion(model, corpus, IcKind::aic, true);

  expect(failures, aic.defined && bic.defined && mdl.defined && aic_sparse.defined,
         "an information criterion came back undefined");
  // Dense parameter count (W-1)*T = 4; sparse counts the 5 nonzero phi cells.
  expect_near(failures, "aic", aic.value, 208.0, 1e-9);
  expect_near(failures, "bic", bic.value, 4.0 * std::log(10.0) + 200.0, 1e-9);
  expect_near(failures, "mdl", mdl.value, 4.0 * std::log(20.0) + 200.0, 1e-9);
  expect_near(failures, "bic decimal", bic.value, 209.21034, 1e-5);
  expect_near(failures, "mdl decimal", mdl.value, 211.98293, 1e-5);
  expect_near(failures, "sparse aic", aic_sparse.value, 210.0, 1e-9);
}

// ---- criterion 2: Renyi entropy worked example --------------------------------

void criterion_renyi(Failures& failures) {
  Mat phi(2, 2);
  phi(0, 0) = 0.9;
  phi(1, 0) = 0.1;
  phi(0, 1) = 0.1;
  phi(1, 1) = 0.9;
  const MetricValue value = renyi_entropy(make_model(phi), 0.5);
  expect(failures, value.defined, "two-topic example came back undefined");
  expect_near(failures, "renyi(multiplier 0.5)", value.value, -0.79850, 1e-5);

  Mat uniform(2, 2, 0.5);
  const MetricValue degenerate = renyi_entropy(make_model(uniform), 1.0);
  expect(failures, !degenerate.defined,
         "uniform phi with multiplier 1 must be flagged undefined");
  expect(failures, !degenerate.note.empty(), "undefined value should carry a note");
}

// ---- criterion 3: diversity analytic values ------------------------------------

void criterion_diversity(Failures& failures) {
  Mat onehot(2, 2);
  onehot(0, 0) = 1.0;
  onehot(1, 1) = 1.0;
  const TopicModel disjoint = make_model(onehot);
  expect_near(failures, "one-hot cosine", diversity(disjoint, TopicDistance::cosine,
                                                    DiversityMode::avg_pairwise).value,
              1.0, 1e-12);
  expect_near(failures, "one-hot l2",
              diversity(disjoint, TopicDistance::l2, DiversityMode::avg_pairwise).value,
              std::sqrt(2.0), 1e-12);
  expect_near(failures, "one-hot hellinger",
              diversity(disjoint, TopicDistance::hellinger, DiversityMode::avg_pairwise).value,
              1.0, 1e-12);
  expect_near(failures, "one-hot jensen-shannon",
              diversity(disjoint, TopicDistance::jensen_shannon, DiversityMode::avg_pairwise).value,
              1.0, 1e-12);

  Mat same(3, 2);
  for (int w = 0; w < 3; ++w) same(w, 0) = same(w, 1) = (w == 0) ? 0.6 : 0.2;
  const TopicModel identical = make_model(same);
  for (const TopicDistance distance : {TopicDistance::cosine, TopicDistance::l2,
                                       TopicDistance::hellinger, TopicDistance::jensen_shannon}) {
    expect_near(failures, "identical topics",
                diversity(identical, distance, DiversityMode::avg_pairwise).value, 0.0, 1e-12);
  }

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const TopicModel model = make_model(random_column_stochastic(rng, 20, 5));
    for (const TopicDistance distance : {TopicDistance::cosine, TopicDistance::l2,
                                         TopicDistance::hellinger,
                                         TopicDistance::jensen_shannon}) {
      const double avg = diversity(model, distance, DiversityMode::avg_pairwise).value;
      const double cls = diversity(model, distance, DiversityMode::closest).value;
      if (!(cls <= avg + 1e-12)) {
        std::ostringstream msg;
        msg << "closest > avg_pairwise on random phi #" << i << " (distance kind "
            << static_cast<int>(distance) << ": " << cls << " > " << avg << ")";
        failures.push_back(msg.str());
        return;
      }
    }
  }
}

// ---- criterion 4: assignment vs brute force ------------------------------------

void criterion_assignment(Failures& failures) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Mat cost(5, 5);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) cost(r, c) = unit(rng);
    }

    std::vector<int> perm = {0, 1, 2, 3, 4};
    double best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (int r = 0; r < 5; ++r) total += cost(r, perm[r]);
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const AssignmentResult result = linear_sum_assignment(cost);
    double solver_total = 0.0;
    for (int r = 0; r < 5; ++r) solver_total += cost(r, result.permutation[r]);
    if (solver_total != best) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "trial " << trial << ": solver total " << solver_total
          << " != brute-force minimum " << best;
      failures.push_back(msg.str());
      return;
    }
    std::vector<int> sorted = result.permutation;
    std::sort(sorted.begin(), sorted.end());
    expect(failures, sorted == std::vector<int>{0, 1, 2, 3, 4},
           "solver result is not a permutation");
    if (!failures.empty()) return;
  }
}

// ---- criterion 5: EM training properties ---------------------------------------

void criterion_em_properties(Failures& failures) {
  const Corpus corpus = synthesize_corpus(3, 100, 200, 50, 0.1, 42).corpus;

  ModelSpec plsa;
  plsa.family = ModelFamily::plsa;
  plsa.num_topics = 5;
  plsa.iterations = 40;
  plsa.seed = 0;
  const TopicModel trained = train(plsa, corpus);
  for (std::size_t i = 1; i < trained.diag.ll_history.size(); ++i) {
    const double prev = trained.diag.ll_history[i - 1];
    const double next = trained.diag.ll_history[i];
    if (!(next >= prev - 1e-8 * std::abs(prev))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "plsa log-likelihood decreased at sweep " << i << ": " << prev << " -> " << next;
      failures.push_back(msg.str());
      break;
    }
  }

  const double mean_count =
      static_cast<double>(corpus.total) / (static_cast<double>(corpus.vocab_size()) * 5.0);
  for (const ModelFamily family :
       {ModelFamily::plsa, ModelFamily::lda_double_symmetric, ModelFamily::lda_asymmetric,
        ModelFamily::lda_heuristic, ModelFamily::decorrelated, ModelFamily::sparse,
        ModelFamily::sparse_decorrelated}) {
    ModelSpec spec;
    spec.family = family;
    spec.num_topics = 5;
    spec.iterations = 40;
    spec.seed = 1;
    if (family == ModelFamily::decorrelated || family == ModelFamily::sparse_decorrelated) {
      spec.tau = 0.2;
    }
    if (family == ModelFamily::sparse || family == ModelFamily::sparse_decorrelated) {
      spec.smooth_beta = 0.1 * mean_count;
      spec.sparse_beta = 0.1 * mean_count;
      spec.background_topics = 1;
    }

    TopicModel model = initialize(spec, corpus);
    for (int sweep = 1; sweep <= 40; ++sweep) {
      model = em_step(model, corpus);
      for (std::size_t t = 0; t < model.phi.cols(); ++t) {
        const double sum = col_sum(model.phi, t);
        if (std::abs(sum - 1.0) > 1e-9) {
          std::ostringstream msg;
          msg << family_name(family) << " sweep " << sweep << ": phi column " << t
              << " sums to " << sum;
          failures.push_back(msg.str());
          return;
        }
      }
      for (std::size_t d = 0; d < model.theta.rows(); ++d) {
        const double sum = row_sum(model.theta, d);
        if (std::abs(sum - 1.0) > 1e-9) {
          std::ostringstream msg;
          msg << family_name(family) << " sweep " << sweep << ": document " << d
              << " mixture sums to " << sum;
          failures.push_back(msg.str());
          return;
        }
      }
    }
  }
}

// ---- criterion 6: uniform-model perplexity -------------------------------------

void criterion_uniform_perplexity(Failures& failures) {
  const int vocab_size = 7;
  Vocabulary vocab;
  for (int w = 0; w < vocab_size; ++w) vocab.tokens.push_back("w" + std::to_string(w));
  std::vector<DocEntries> docs(5);
  for (int d = 0; d < 5; ++d) {
    docs[d].id = d + 1;
    for (std::int32_t w = 0; w < vocab_size; ++w) docs[d].entries.push_back({w, d + w + 1});
  }
  const Corpus corpus = Corpus::from_documents(vocab, docs);

  TopicModel model;
  model.spec.num_topics = 3;
  model.phi = Mat(vocab_size, 3, 1.0 / vocab_size);  // p(w|d) = 1/W for any theta
  model.theta = Mat(corpus.num_docs(), 3, 1.0 / 3.0);
  model.n_wt = Mat(vocab_size, 3);

  const MetricValue p = perplexity(model, corpus);
  expect(failures, p.defined, "perplexity undefined on a valid model");
  expect_near(failures, "uniform-model perplexity", p.value, static_cast<double>(vocab_size),
              1e-9 * vocab_size);
}

// ---- criterion 7: synthetic topic-count recovery -------------------------------

void criterion_recovery(Failures& failures) {
  const Corpus& corpus = shared.recovery();
  const std::vector<std::string> metric_names = {"bic", "mdl", "renyi-1"};
  std::map<std::string, int> recovered;  // metric -> seeds with a usable verdict

  for (const std::uint64_t seed : {0, 1, 2}) {
    std::map<std::string, Curve> curves;
    for (const std::string& name : metric_names) {
      curves[name] = make_curve(name, metric_direction(name), {}, 0);
      curves[name].points.clear();
      curves[name].seed = seed;
    }
    for (int t = 2; t <= 12; ++t) {
      ModelSpec spec;
      spec.family = ModelFamily::plsa;
      spec.num_topics = t;
      spec.iterations = 40;
      spec.seed = seed;
      const TopicModel model = train(spec, corpus);
      const MetricValue bic = information_criterion(model, corpus, IcKind::bic, false);
      const MetricValue mdl = information_criterion(model, corpus, IcKind::mdl, false);
      const MetricValue renyi = renyi_entropy(model, 1.0);
      if (bic.defined) curves["bic"].points.push_back({t, bic.value});
      if (mdl.defined) curves["mdl"].points.push_back({t, mdl.value});
      if (renyi.defined) curves["renyi-1"].points.push_back({t, renyi.value});
    }
    for (const std::string& name : metric_names) {
      const OptimumVerdict verdict = classify(curves[name], 0.07);
      const bool intersects = std::any_of(verdict.band.begin(), verdict.band.end(),
                                          [](int t) { return t >= 4 && t <= 6; });
      if (is_readable(verdict.category) && intersects) ++recovered[name];
    }
  }

  int successes = 0;
  std::ostringstream detail;
  for (const std::string& name : metric_names) {
    const int seeds = recovered[name];
    if (seeds > 0) ++successes;
    detail << name << "=" << seeds << "/3 ";
  }
  if (successes < 2) {
    failures.push_back(
        "fewer than two of {bic, mdl, renyi-1} recovered a readable band intersecting "
        "[4,6]; per-metric seed counts: " + detail.str());
  }
}

// ---- criterion 8: optimum classification determinism ---------------------------

void criterion_optima(Failures& failures) {
  const auto check_case = [&](const std::vector<double>& values, Direction direction,
                              const std::vector<int>& want_band, OptimumCategory want_category,
                              bool want_boundary, const char* label) {
    const OptimumVerdict verdict = classify(make_curve("bic", direction, values), 0.07);
    if (verdict.band != want_band || verdict.category != want_category ||
        verdict.boundary_hit != want_boundary) {
      std::ostringstream msg;
      msg << label << ": got band {";
      for (int t : verdict.band) msg << t << ' ';
      msg << "} category " << category_name(verdict.category)
          << (verdict.boundary_hit ? " (boundary)" : "");
      failures.push_back(msg.str());
    }
  };

  check_case({1, 2, 10, 2, 1}, Direction::maximize, {4}, OptimumCategory::single_pronounced,
             false, "pronounced peak");
  check_case({10, 1, 1, 1, 10}, Direction::minimize, {3, 4, 5}, OptimumCategory::interval,
             false, "flat valley");
  check_case({1, 10, 1, 10, 1}, Direction::maximize, {3, 5},
             OptimumCategory::alternating_peaks, false, "alternating peaks");
  check_case({1, 2, 3, 4, 5}, Direction::maximize, {6}, OptimumCategory::uninformative, true,
             "monotone boundary");

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::uniform_real_distribution<double> offset(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values(9);
    for (double& v : values) v = unit(rng);
    const Direction direction = (i % 2 == 0) ? Direction::maximize : Direction::minimize;
    const double a = scale(rng);
    const double b = offset(rng);
    std::vector<double> transformed(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) transformed[j] = a * values[j] + b;

    const std::vector<int> band = optimal_band(make_curve("bic", direction, values), 0.07);
    const std::vector<int> band2 =
        optimal_band(make_curve("bic", direction, transformed), 0.07);
    if (band != band2) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "band changed under affine map #" << i << " (a=" << a << ", b=" << b << ")";
      failures.push_back(msg.str());
      return;
    }
  }
}

// ---- criterion 9: stability sanity ---------------------------------------------

void criterion_stability(Failures& failures) {
  // Forced identical subsamples: every document is the same, so every
  // subsample trains on the same corpus and the same initialization seed.
  {
    Vocabulary vocab{{"a", "b", "c", "d", "e"}};
    std::vector<DocEntries> docs(24);
    for (int d = 0; d < 24; ++d) {
      docs[d].id = d + 1;
      docs[d].entries = {{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 1}};
    }
    const Corpus clones = Corpus::from_documents(vocab, docs);
    ModelSpec spec;
    spec.family = ModelFamily::plsa;
    spec.num_topics = 2;
    spec.iterations = 10;
    spec.seed = 3;
    StabilityConfig config;
    config.subsamples = 4;
    config.fraction = 0.5;
    config.top_k = 3;
    const InstabilityResult result = instability(clones, spec, config, 2);
    expect(failures, result.value == 0.0, "identical subsample models must give instability 0");
    for (const double d : result.pair_distances) {
      expect(failures, d == 0.0, "a pair distance is nonzero on identical models");
    }
  }

  // Repeated estimates on the recovery corpus: the true topic count is more
  // stable than an inflated one, and every estimate stays inside [0, 1].
  const Corpus& corpus = shared.recovery();
  ModelSpec spec;
  spec.family = ModelFamily::plsa;
  spec.iterations = 40;
  spec.seed = 0;
  double mean_true = 0.0;
  double mean_inflated = 0.0;
  for (const std::uint64_t base_seed : {0, 100, 200}) {
    StabilityConfig config;
    config.subsamples = 5;
    config.fraction = 0.5;
    config.base_seed = base_seed;
    config.top_k = 10;
    for (const int t : {5, 12}) {
      const InstabilityResult result = instability(corpus, spec, config, t);
      if (!(result.value >= 0.0 && result.value <= 1.0)) {
        std::ostringstream msg;
        msg << "instability(t=" << t << ", base_seed=" << base_seed << ") = " << result.value
            << " leaves [0, 1]";
        failures.push_back(msg.str());
      }
      (t == 5 ? mean_true : mean_inflated) += result.value / 3.0;
    }
  }
  if (!(mean_true < mean_inflated)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mean instability at the true topic count (" << mean_true
        << ") is not below the inflated one (" << mean_inflated << ")";
    failures.push_back(msg.str());
  }
}

// ---- criterion 10: pipeline determinism ----------------------------------------

struct PerformanceCsvRow {
  std::string jaccard, informativity, expected;
};

std::map<std::string, PerformanceCsvRow> read_performance_csv(const fs::path& path,
                                                              Failures& failures) {
  std::map<std::string, PerformanceCsvRow> rows;
  std::ifstream in(path);
  if (!in) {
    failures.push_back("cannot open " + path.string());
    return rows;
  }
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string metric, jaccard, informativity, expected;
    std::getline(fields, metric, ',');
    std::getline(fields, jaccard, ',');
    std::getline(fields, informativity, ',');
    std::getline(fields, expected, ',');
    rows[metric] = {jaccard, informativity, expected};
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_pipeline_determinism(Failures& failures) {
  const fs::path base = fs::temp_directory_path() / "tscan_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  std::ostringstream log;

  SynthArgs synth;
  synth.num_topics = 3;
  synth.vocab_size = 50;
  synth.num_docs = 120;
  synth.doc_length = 30;
  synth.concentration = 0.1;
  synth.seed = 3;
  synth.out_dir = (base / "data").string();
  if (cmd_synth(synth, log) != exit_ok) {
    failures.push_back("synthetic corpus generation failed");
    return;
  }

  const auto config_text = [&](const std::string& out_dir) {
    std::ostringstream conf;
    conf << "out = " << out_dir << "\n"
         << "t_min = 2\nt_max = 6\nt_step = 1\nseeds = 0, 1\niterations = 12\n"
         << "metrics = bic, renyi-1\n"
         << "[dataset toy]\n"
         << "docword = " << (base / "data" / "docword.txt").string() << "\n"
         << "vocab = " << (base / "data" / "vocab.txt").string() << "\n"
         << "expected = 3\n"
         << "[family plain]\ntype = plsa\n"
         << "[stability]\nenabled = false\n";
    return conf.str();
  };
  const ScanConfig config_a = parse_config_text(config_text((base / "a").string()));
  const ScanConfig config_b = parse_config_text(config_text((base / "b").string()));

  if (cmd_scan(config_a, false, log) != exit_ok || cmd_scan(config_b, false, log) != exit_ok) {
    failures.push_back("a scan run failed");
    return;
  }
  const std::string curve_a = slurp(base / "a" / "curves" / "toy__plain.csv");
  const std::string curve_b = slurp(base / "b" / "curves" / "toy__plain.csv");
  expect(failures, !curve_a.empty(), "first scan produced no curve file");
  expect(failures, curve_a == curve_b, "two identical scans produced different curve bytes");

  if (cmd_report(config_a, log) != exit_ok) {
    failures.push_back("report failed");
    return;
  }

  // Independent re-aggregation of the verdicts, straight from the JSON.
  const auto records =
      read_verdicts_json((base / "a" / "verdicts" / "toy__plain.json").string(), "toy");
  expect(failures, records.size() == 4, "expected 2 metrics x 2 seeds verdicts");

  std::map<std::string, std::vector<const VerdictRecord*>> by_metric;
  for (const auto& record : records) by_metric[record.metric].push_back(&record);

  const auto table = read_performance_csv(base / "a" / "performance.csv", failures);
  expect(failures, table.size() == by_metric.size(),
         "performance table has a different metric set than the verdicts");

  for (const auto& [metric, cell] : by_metric) {
    // Band agreement: joint intersection over union of usable bands.
    std::vector<std::vector<int>> usable;
    for (const auto* record : cell) {
      if (!record->verdict.boundary_hit && !record->verdict.band.empty()) {
        usable.push_back(record->verdict.band);
      }
    }
    std::string want_jaccard = "nan";
    if (usable.size() >= 2) {
      std::set<int> inter(usable[0].begin(), usable[0].end());
      std::set<int> uni(usable[0].begin(), usable[0].end());
      for (std::size_t i = 1; i < usable.size(); ++i) {
        const std::set<int> next(usable[i].begin(), usable[i].end());
        std::set<int> keep;
        for (int t : inter) {
          if (next.count(t)) keep.insert(t);
        }
        inter = keep;
        uni.insert(next.begin(), next.end());
      }
      want_jaccard =
          format_double(static_cast<double>(inter.size()) / static_cast<double>(uni.size()));
    }

    int readable = 0;
    int hits = 0;
    for (const auto* record : cell) {
      if (is_readable(record->verdict.category)) ++readable;
      const auto& band = record->verdict.band;
      if (std::any_of(band.begin(), band.end(), [](int t) { return t == 3; })) ++hits;
    }
    const std::string want_informativity =
        format_double(static_cast<double>(readable) / static_cast<double>(cell.size()));
    const std::string want_expected =
        format_double(static_cast<double>(hits) / static_cast<double>(cell.size()));

    const auto found = table.find(metric);
    if (found == table.end()) {
      failures.push_back("metric " + metric + " missing from performance.csv");
      continue;
    }
    if (found->second.jaccard != want_jaccard ||
        found->second.informativity != want_informativity ||
        found->second.expected != want_expected) {
      failures.push_back("performance row for " + metric + " (" + found->second.jaccard + "," +
                         found->second.informativity + "," + found->second.expected +
                         ") differs from re-aggregation (" + want_jaccard + "," +
                         want_informativity + "," + want_expected + ")");
    }
  }

  fs::remove_all(base);
}

struct Criterion {
  int number;
  const char* title;
  double time_limit;  // seconds; 0 = no limit stated
  void (*run)(Failures&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "information-criterion hand values", 1.0, criterion_information_criteria},
      {2, "renyi entropy worked example", 1.0, criterion_renyi},
      {3, "diversity analytic values", 5.0, criterion_diversity},
      {4, "assignment matches brute force", 5.0, criterion_assignment},
      {5, "em training properties", 60.0, criterion_em_properties},
      {6, "uniform-model perplexity", 0.0, criterion_uniform_perplexity},
      {7, "synthetic topic-count recovery", 600.0, criterion_recovery},
      {8, "optimum classification determinism", 0.0, criterion_optima},
      {9, "stability sanity", 0.0, criterion_stability},
      {10, "pipeline determinism", 0.0, criterion_pipeline_determinism},
  };

  bool any_failed = false;
  for (const Criterion& criterion : criteria) {
    Failures failures;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit > 0.0 && elapsed > criterion.time_limit) {
      std::ostringstream msg;
      msg << "runtime " << format_seconds(elapsed) << " exceeds the " << criterion.time_limit
          << " s limit";
      failures.push_back(msg.str());
    }

    const bool passed = failures.empty();
    any_failed = any_failed || !passed;
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << criterion.number << ". " << criterion.title
              << " (" << format_seconds(elapsed) << ")\n";
    for (const std::string& reason : failures) {
      std::cout << "       - " << reason << '\n';
    }
    std::cout.flush();
  }

  return any_failed ? 1 : 0;
}
