#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tscan/mat.hpp"

namespace tscan {

// The trainable model families. All share the same EM core and differ only
// in the additive pseudocounts applied in the M-step (see trainer.hpp).
enum class ModelFamily {
  plsa,                  // no pseudocounts
  lda_double_symmetric,  // symmetric 1/T smoothing on words and topics
  lda_asymmetric,        // symmetric on words, decaying per-topic on documents
  lda_heuristic,         // fixed 0.01 on words, 50/T on topics
  decorrelated,          // anti-correlation push between topic columns
  sparse,                // smoothed background topics, sparsified specific ones
  sparse_decorrelated,   // sparse and decorrelated combined
};

const char* family_name(ModelFamily family);
std::optional<ModelFamily> family_from_name(std::string_view name);
const std::vector<ModelFamily>& all_families();

struct ModelSpec {
  ModelFamily family = ModelFamily::plsa;
  int num_topics = 1;
  std::uint64_t seed = 0;
  int iterations = 40;

  // decorrelated / sparse_decorrelated: weight of the anti-correlation push.
  double tau = 0.0;
  // sparse / sparse_decorrelated: absolute pseudocount added to background
  // topic columns and subtracted from the remaining (specific) ones, and the
  // number of leading topic indices treated as background.
  double smooth_beta = 0.0;
  double sparse_beta = 0.0;
  int background_topics = 0;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// Counters for the recoverable anomalies of a training run.
struct TrainDiagnostics {
  // Likelihood terms where p(w|d) was zero and got floored before the log.
  std::int64_t floored_ll_terms = 0;
  // Columns whose pseudocounted counts summed to zero and were reset to the
  // uniform distribution during normalization.
  std::int64_t reset_phi_columns = 0;
  std::int64_t reset_theta_rows = 0;
  // Training-data log-likelihood measured at the start of each sweep, plus a
  // final entry at the converged parameters.
  std::vector<double> ll_history;
};

// A fitted model. phi columns and theta rows are probability distributions;
// theta is stored documents-by-topics so each document's mixture is one
// contiguous row.
struct TopicModel {
  ModelSpec spec;
  Mat phi;    // vocab_size x num_topics, p(word | topic)
  Mat theta;  // num_docs x num_topics, p(topic | document)
  Mat n_wt;   // vocab_size x num_topics, expected token counts at the fitted
              // parameters (the E-step soft assignments, not smoothed)
  double log_likelihood = 0.0;  // training log-likelihood at the fitted parameters
  TrainDiagnostics diag;

  std::size_t vocab_size() const { return phi.rows(); }
  std::size_t num_topics() const { return phi.cols(); }
  std::size_t num_docs() const { return theta.rows(); }

  // Structural checks: shapes agree, entries are finite and non-negative,
  // phi columns and theta rows sum to 1 within tolerance.
  void validate() const;
};

}  // namespace tscan
