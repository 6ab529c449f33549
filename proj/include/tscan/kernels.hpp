#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/mat.hpp"

namespace tscan {

// Execution mode for the numeric kernels. serial is the reference
// implementation: a single textbook loop over documents. parallel distributes
// work across OpenMP threads but is constructed so that every floating-point
// sum is formed in the same order regardless of thread count, making results
// reproducible on any machine. The two modes are compared in the test suite
// and the benchmark target.
enum class Exec { serial, parallel };

// Column-oriented view of a corpus: for every word, the postings (document,
// CSR position) that contain it, documents ascending. Built once per corpus
// and shared by the parallel kernels.
struct CorpusColumns {
  std::vector<std::size_t> word_ptr;  // size W+1
  std::vector<std::size_t> doc_of;    // size nnz, document index per posting
  std::vector<std::size_t> pos_of;    // size nnz, CSR index per posting

  static CorpusColumns build(const Corpus& corpus);
};

// Results of one E-step pass at fixed (phi, theta).
struct EmAccumulators {
  Mat n_wt;  // vocab_size x num_topics expected counts
  Mat n_dt;  // num_docs x num_topics expected counts
  double log_likelihood = 0.0;
  std::int64_t floored_ll_terms = 0;

  EmAccumulators() = default;
  EmAccumulators(std::size_t vocab, std::size_t docs, std::size_t topics)
      : n_wt(vocab, topics), n_dt(docs, topics) {}
};

// One expectation pass: soft-assigns every token occurrence to topics in
// proportion to phi_wt * theta_dt and accumulates expected counts and the
// log-likelihood sum(n_dw * log p(w|d)). Zero p(w|d) contributes a floored
// log term and no counts. phi is vocab_size x T, theta num_docs x T.
void em_accumulate(const Corpus& corpus, const CorpusColumns& columns, const Mat& phi,
                   const Mat& theta, EmAccumulators& out, Exec exec);

// Log-likelihood only (no count accumulation).
double log_likelihood_eval(const Corpus& corpus, const Mat& phi, const Mat& theta,
                           std::int64_t* floored_ll_terms, Exec exec);

// M-step for the word distributions: phi(w,t) = max(0, n_wt + r_wt)
// normalized per column; a column with no mass left is reset to uniform and
// counted. r may be empty (no pseudocounts).
std::int64_t m_step_phi(const Mat& n_wt, const Mat& r, Mat& phi);

// M-step for the document mixtures: theta(d,t) = max(0, n_dt + a_t)
// normalized per row; rows with no mass are reset to uniform and counted.
// a may be empty.
std::int64_t m_step_theta(const Mat& n_dt, std::span<const double> a, Mat& theta);

// Estimates a mixture for one held-out document against a frozen phi by
// iterating the EM update on that document alone, starting from uniform.
// theta_pseudo holds the per-topic pseudocounts of the model family (may be
// empty). Returns the document's topic distribution.
std::vector<double> fold_in_document(const Mat& phi, std::span<const std::int32_t> words,
                                     std::span<const std::int64_t> counts, int iterations,
                                     std::span<const double> theta_pseudo);

// fold_in_document over every document of a corpus; rows of the result are
// the inferred mixtures. Documents are independent, so the parallel mode
// splits them across threads without changing any result.
Mat fold_in_corpus(const Corpus& corpus, const Mat& phi, int iterations,
                   std::span<const double> theta_pseudo, Exec exec);

}  // namespace tscan
