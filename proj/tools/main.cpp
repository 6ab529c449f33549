#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tscan/config.hpp"
#include "tscan/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"topic-count scanning toolkit: trains topic models across a grid of "
               "topic counts and scores number-of-topics metrics"};
  app.require_subcommand(1);

  std::string config_path;
  bool force = false;
  int workers = -1;
  std::string out_override;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file (INI)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--workers", workers, "worker pool size (0 = all available cores)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", out_override, "output directory (overrides the config)");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "load and validate the configured datasets");
  add_common(ingest);

  CLI::App* scan = app.add_subcommand(
      "scan", "train every (dataset, family, T, seed) cell and write metric curves");
  add_common(scan);
  scan->add_flag("--force", force, "recompute cells already present in the curve files");

  CLI::App* stability =
      app.add_subcommand("stability", "subsample-stability curves over the topic grid");
  add_common(stability);
  stability->add_flag("--force", force, "recompute points already present in the curve files");

  CLI::App* report = app.add_subcommand(
      "report", "classify curve optima and write verdicts and the metric performance table");
  add_common(report);

  CLI::App* synth =
      app.add_subcommand("synth", "generate a synthetic corpus with a known topic count");
  tscan::SynthArgs synth_args;
  synth->add_option("--topics", synth_args.num_topics, "number of generating topics")
      ->check(CLI::PositiveNumber);
  synth->add_option("--vocab", synth_args.vocab_size, "vocabulary size")
      ->check(CLI::PositiveNumber);
  synth->add_option("--docs", synth_args.num_docs, "number of documents")
      ->check(CLI::PositiveNumber);
  synth->add_option("--doc-length", synth_args.doc_length, "tokens per document")
      ->check(CLI::PositiveNumber);
  synth->add_option("--concentration", synth_args.concentration,
                    "Dirichlet concentration of the word distributions");
  synth->add_option("--seed", synth_args.seed, "generator seed");
  synth->add_option("--out", synth_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tscan::exit_ok : tscan::exit_config;
  }

  try {
    if (synth->parsed()) return tscan::cmd_synth(synth_args, std::cout);

    tscan::ScanConfig config = tscan::parse_config(config_path);
    if (workers >= 0) config.workers = workers;
    if (!out_override.empty()) config.out_dir = out_override;
    config.validate();

    if (ingest->parsed()) return tscan::cmd_ingest(config, std::cout);
    if (scan->parsed()) return tscan::cmd_scan(config, force, std::cout);
    if (stability->parsed()) return tscan::cmd_stability(config, force, std::cout);
    if (report->parsed()) return tscan::cmd_report(config, std::cout);
    std::cerr << "no subcommand selected\n";
    return tscan::exit_config;
  } catch (const tscan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tscan::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tscan::exit_partial;
  }
}
