#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/kernels.hpp"
#include "tscan/model.hpp"

namespace tscan {

enum class Direction { minimize, maximize };

// One scalar quality measurement. A value may be undefined (empty Renyi
// support, degenerate clustering, ...); such measurements carry defined =
// false and a note, and are excluded from curves downstream.
struct MetricValue {
  std::string name;
  double value = 0.0;
  Direction direction = Direction::minimize;
  bool defined = true;
  std::string note;
};

// The full set of metric identifiers this library emits into curve files,
// including the derived ones (rpc) and the subsample-based one (instability).
const std::vector<std::string>& all_metric_names();
// Direction of a known identifier; throws std::invalid_argument otherwise.
Direction metric_direction(std::string_view name);
bool is_metric_name(std::string_view name);

// ---- Likelihood-based metrics ----------------------------------------------

// exp(-L/n) on the given corpus using the model's own theta; the corpus must
// be the one the theta rows describe. Held-out evaluation goes through
// holdout_perplexity, which folds in mixtures first.
MetricValue perplexity(const TopicModel& model, const Corpus& corpus, Exec exec = Exec::parallel);

MetricValue holdout_perplexity(const TopicModel& model, const Corpus& heldout,
                               int fold_in_iterations, Exec exec = Exec::parallel);

// Rate of change between consecutive points of a perplexity-vs-T curve:
// |P_i - P_{i-1}| / (T_i - T_{i-1}). Input must be sorted by strictly
// increasing T with at least two points; output has one entry per input
// point from the second onward.
std::vector<std::pair<int, double>> rpc(const std::vector<std::pair<int, double>>& perplexities);

enum class IcKind { aic, bic, mdl };

// Penalized-likelihood criteria. Parameter count N_p is (W-1)*T for the
// dense variant or the number of phi entries above 1e-12 for the sparse one.
// aic = 2*N_p - 2L, bic = N_p*ln(D) - 2L, mdl = N_p*ln(T*D) - 2L, with L the
// model's stored training log-likelihood and D taken from the corpus.
MetricValue information_criterion(const TopicModel& model, const Corpus& corpus, IcKind kind,
                                  bool sparse);

// ---- Distribution-shape metrics ---------------------------------------------

// Renyi-style entropy score over thresholded phi entries: with threshold
// e0 = multiplier/W and S = {(w,t): phi > e0}, E = -ln(sum of kept phi),
// E_f = E - T*ln(|S|/(W*T)), value = -E_f/(T-1). Undefined when T = 1 or S
// is empty.
MetricValue renyi_entropy(const TopicModel& model, double threshold_multiplier);

enum class TopicDistance { cosine, l2, hellinger, jensen_shannon };
enum class DiversityMode { avg_pairwise, closest };

// Mean pairwise (or mean nearest-neighbor) distance between phi columns.
// Jensen-Shannon uses base-2 logs so disjoint supports score 1; the other
// distances are the usual cosine distance, Euclidean norm, and Hellinger.
MetricValue diversity(const TopicModel& model, TopicDistance distance, DiversityMode mode);

// Symmetric KL divergence between the normalized singular-value spectrum of
// phi and the normalized, descending-sorted topic mass vector
// (sum_d n_d * theta_dt). Zero entries are floored at 1e-12 before
// normalization; if the two spectra have different lengths the shorter is
// padded with the floor (noted).
MetricValue d_spectral(const TopicModel& model, const Corpus& corpus);

// KL(uniform || p) where p(t) = sum_d theta_dt * n_d / n, the length-weighted
// topic mass distribution.
MetricValue uni_theta_divergence(const TopicModel& model, const Corpus& corpus);

// ---- Clustering metrics over document mixtures ------------------------------

// Documents are points theta_d in the topic simplex, labeled by their argmax
// topic (lowest index wins ties); Euclidean distances. Undefined when all
// documents share one label. Singleton clusters contribute silhouette 0.
MetricValue silhouette(const TopicModel& model, Exec exec = Exec::parallel);

// Calinski-Harabasz index on the same points and labels. Undefined when the
// label count k is 1 or equals D; zero within-cluster dispersion is reported
// as an infinite (undefined) value.
MetricValue calinski_harabasz(const TopicModel& model);

// ---- Top-token metrics -------------------------------------------------------

struct TopTokens {
  // per_topic[t] holds min(k, W) token indices ordered by descending phi,
  // ties broken by ascending token index.
  std::vector<std::vector<std::int32_t>> per_topic;
};

TopTokens top_tokens(const Mat& phi, int k);

// Document-frequency index over a corpus: which documents contain each
// token at least once. Built once per corpus and shared read-only.
class CooccurrenceIndex {
 public:
  explicit CooccurrenceIndex(const Corpus& corpus);

  std::int64_t doc_frequency(std::int32_t w) const;
  // Number of documents containing both tokens.
  std::int64_t co_frequency(std::int32_t a, std::int32_t b) const;
  std::size_t num_docs() const { return num_docs_; }

 private:
  std::vector<std::size_t> word_ptr_;
  std::vector<std::size_t> docs_;  // ascending within each word
  std::size_t num_docs_ = 0;
};

// Mean over topics of the UMass-style score
// sum_{i=2..k} sum_{j<i} ln((codocs(w_i, w_j) + 1) / docs(w_j)) over the
// topic's top-k tokens. Pairs whose conditioning token appears in no
// document are skipped and noted.
MetricValue coherence(const TopicModel& model, const Corpus& corpus, const CooccurrenceIndex& index,
                      int k = 10);
MetricValue coherence(const TopicModel& model, const Corpus& corpus, int k = 10);

// Mean over topics of the mean log ratio ln(phi_wt / f(w)) over top-k
// tokens, where f(w) is the corpus frequency of w (floored at 1e-12).
MetricValue lift_score(const TopicModel& model, const Corpus& corpus, int k = 10);

// ---- Batch evaluation --------------------------------------------------------

// Everything the per-model metric computations need besides the model.
struct MetricContext {
  const Corpus* train = nullptr;
  const Corpus* heldout = nullptr;               // may be null: holdout metrics skipped
  const CooccurrenceIndex* cooccurrence = nullptr;  // built on *train if null
  int fold_in_iterations = 20;
  int top_k = 10;
  Exec exec = Exec::parallel;
};

// Computes every per-model metric (all identifiers except the derived rpc
// and the subsample-based instability). Precondition violations of
// individual metrics (e.g. T = 1 for diversity) become undefined values with
// a note instead of exceptions, so one degenerate metric cannot abort a scan
// cell. `which` restricts to a subset of identifiers; empty means all.
std::vector<MetricValue> compute_metrics(const TopicModel& model, const MetricContext& context,
                                         const std::vector<std::string>& which = {});

}  // namespace tscan
