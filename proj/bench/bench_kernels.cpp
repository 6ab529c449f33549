// Microbenchmark comparing the serial reference kernels with the parallel
// ones on a synthetic corpus, and verifying along the way that both modes
// produce bit-identical results. Build with the normal toolchain and run
// without arguments; pass a thread count to pin the parallel mode.
//
//   tscan_bench [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/kernels.hpp"
#include "tscan/model.hpp"
#include "tscan/trainer.hpp"

using namespace tscan;

namespace {

double seconds_of(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Best of three timed repetitions, after one untimed warm-up.
double best_of_three(const std::function<void()>& body) {
  body();
  double best = seconds_of(body);
  for (int i = 0; i < 2; ++i) best = std::min(best, seconds_of(body));
  return best;
}

void print_row(const char* name, double serial, double parallel) {
  std::printf("%-18s %10.4f s %12.4f s %9.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));

  const int vocab = 2000;
  const int docs = 4000;
  const int doc_length = 200;
  const int topics = 20;
  std::printf("corpus: %d docs x %d words, doc length %d, %d topics, %d thread(s)\n", docs,
              vocab, doc_length, topics, omp_get_max_threads());

  const Corpus corpus = synthesize_corpus(topics, vocab, docs, doc_length, 0.05, 1).corpus;
  const CorpusColumns columns = CorpusColumns::build(corpus);

  ModelSpec spec;
  spec.family = ModelFamily::plsa;
  spec.num_topics = topics;
  spec.iterations = 1;
  spec.seed = 0;
  const TopicModel model = initialize(spec, corpus);

  std::printf("%-18s %12s %14s %10s\n", "kernel", "serial", "parallel", "speedup");

  EmAccumulators serial_acc(corpus.vocab_size(), corpus.num_docs(), topics);
  EmAccumulators parallel_acc(corpus.vocab_size(), corpus.num_docs(), topics);
  const double em_serial = best_of_three(
      [&] { em_accumulate(corpus, columns, model.phi, model.theta, serial_acc, Exec::serial); });
  const double em_parallel = best_of_three([&] {
    em_accumulate(corpus, columns, model.phi, model.theta, parallel_acc, Exec::parallel);
  });
  print_row("em_accumulate", em_serial, em_parallel);
  if (!(serial_acc.n_wt == parallel_acc.n_wt) || !(serial_acc.n_dt == parallel_acc.n_dt) ||
      serial_acc.log_likelihood != parallel_acc.log_likelihood) {
    std::fprintf(stderr, "FAIL: serial and parallel E-step results differ\n");
    return 1;
  }

  std::int64_t floored = 0;
  double ll_serial_value = 0.0;
  double ll_parallel_value = 0.0;
  const double ll_serial = best_of_three([&] {
    ll_serial_value = log_likelihood_eval(corpus, model.phi, model.theta, &floored, Exec::serial);
  });
  const double ll_parallel = best_of_three([&] {
    ll_parallel_value =
        log_likelihood_eval(corpus, model.phi, model.theta, &floored, Exec::parallel);
  });
  print_row("log_likelihood", ll_serial, ll_parallel);
  if (ll_serial_value != ll_parallel_value) {
    std::fprintf(stderr, "FAIL: serial and parallel log-likelihoods differ\n");
    return 1;
  }

  Mat fold_serial, fold_parallel;
  const double fi_serial = best_of_three(
      [&] { fold_serial = fold_in_corpus(corpus, model.phi, 10, {}, Exec::serial); });
  const double fi_parallel = best_of_three(
      [&] { fold_parallel = fold_in_corpus(corpus, model.phi, 10, {}, Exec::parallel); });
  print_row("fold_in_corpus", fi_serial, fi_parallel);
  if (!(fold_serial == fold_parallel)) {
    std::fprintf(stderr, "FAIL: serial and parallel fold-in results differ\n");
    return 1;
  }

  ModelSpec train_spec = spec;
  train_spec.iterations = 5;
  TopicModel trained_serial, trained_parallel;
  const double tr_serial =
      best_of_three([&] { trained_serial = train(train_spec, corpus, Exec::serial); });
  const double tr_parallel =
      best_of_three([&] { trained_parallel = train(train_spec, corpus, Exec::parallel); });
  print_row("train (5 sweeps)", tr_serial, tr_parallel);
  if (!(trained_serial.phi == trained_parallel.phi) ||
      !(trained_serial.theta == trained_parallel.theta)) {
    std::fprintf(stderr, "FAIL: serial and parallel training results differ\n");
    return 1;
  }

  std::printf("all kernels produced bit-identical serial/parallel results\n");
  return 0;
}
