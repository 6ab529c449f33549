#include "tscan/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace tscan {

// Likelihood terms with zero probability mass are floored at this value
// before the log; occurrences are counted in the diagnostics.
static constexpr double kLogFloor = 1e-30;

CorpusColumns CorpusColumns::build(const Corpus& corpus) {
  const std::size_t w_count = corpus.vocab_size();
  CorpusColumns columns;
  columns.word_ptr.assign(w_count + 1, 0);
  for (const std::int32_t w : corpus.words) ++columns.word_ptr[static_cast<std::size_t>(w) + 1];
  for (std::size_t w = 0; w < w_count; ++w) columns.word_ptr[w + 1] += columns.word_ptr[w];

  columns.doc_of.resize(corpus.nnz());
  columns.pos_of.resize(corpus.nnz());
  std::vector<std::size_t> cursor(columns.word_ptr.begin(), columns.word_ptr.end() - 1);
  // Scanning documents in ascending order leaves every word's postings
  // sorted by document, which fixes the accumulation order in the kernels.
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    for (std::size_t j = corpus.doc_ptr[d]; j < corpus.doc_ptr[d + 1]; ++j) {
      const auto w = static_cast<std::size_t>(corpus.words[j]);
      columns.doc_of[cursor[w]] = d;
      columns.pos_of[cursor[w]] = j;
      ++cursor[w];
    }
  }
  return columns;
}

namespace {

void check_shapes(const Corpus& corpus, const Mat& phi, const Mat& theta) {
  if (phi.rows() != corpus.vocab_size()) {
    throw std::invalid_argument("kernel: phi row count does not match the vocabulary");
  }
  if (theta.rows() != corpus.num_docs()) {
    throw std::invalid_argument("kernel: theta row count does not match the documents");
  }
  if (phi.cols() != theta.cols() || phi.cols() == 0) {
    throw std::invalid_argument("kernel: phi/theta topic counts disagree");
  }
}

// Token mass z = sum_t phi_wt * theta_dt. Shared by every kernel so the
// serial and parallel paths evaluate the identical expression sequence.
inline double token_mass(const double* phi_w, const double* theta_d, std::size_t t_count) {
  double z = 0.0;
  for (std::size_t t = 0; t < t_count; ++t) z += phi_w[t] * theta_d[t];
  return z;
}

inline void scatter_counts(double* acc, const double* phi_w, const double* theta_d,
                           std::size_t t_count, double scale) {
  for (std::size_t t = 0; t < t_count; ++t) acc[t] += scale * (phi_w[t] * theta_d[t]);
}

// Per-document log-likelihood plus per-document topic counts and token
// masses. The parallel path runs this over documents (each document owns its
// n_dt row and its z entries), and the serial path runs the identical code
// in a plain loop, so both produce bit-identical numbers.
inline double accumulate_document(const Corpus& corpus, const Mat& phi, const Mat& theta,
                                  std::size_t d, double* z_buffer, Mat* n_dt,
                                  std::int64_t& floored) {
  const std::size_t t_count = phi.cols();
  const double* theta_d = theta.row(d).data();
  double ll_d = 0.0;
  for (std::size_t j = corpus.doc_ptr[d]; j < corpus.doc_ptr[d + 1]; ++j) {
    const auto w = static_cast<std::size_t>(corpus.words[j]);
    const auto c = static_cast<double>(corpus.counts[j]);
    const double* phi_w = phi.row(w).data();
    const double z = token_mass(phi_w, theta_d, t_count);
    if (z_buffer) z_buffer[j] = z;
    if (z > 0.0) {
      if (n_dt) scatter_counts(n_dt->row(d).data(), phi_w, theta_d, t_count, c / z);
      ll_d += c * std::log(z);
    } else {
      ll_d += c * std::log(kLogFloor);
      ++floored;
    }
  }
  return ll_d;
}

}  // namespace

void em_accumulate(const Corpus& corpus, const CorpusColumns& columns, const Mat& phi,
                   const Mat& theta, EmAccumulators& out, Exec exec) {
  check_shapes(corpus, phi, theta);
  const std::size_t d_count = corpus.num_docs();
  const std::size_t w_count = corpus.vocab_size();
  const std::size_t t_count = phi.cols();

  if (out.n_wt.rows() != w_count || out.n_wt.cols() != t_count) out.n_wt = Mat(w_count, t_count);
  if (out.n_dt.rows() != d_count || out.n_dt.cols() != t_count) out.n_dt = Mat(d_count, t_count);
  out.n_wt.fill(0.0);
  out.n_dt.fill(0.0);
  out.log_likelihood = 0.0;
  out.floored_ll_terms = 0;

  if (exec == Exec::serial) {
    // Reference implementation: one pass over documents, scattering counts
    // into both matrices. For a fixed word w the n_wt updates happen in
    // ascending-document order because documents are visited ascending and
    // each contains w at most once — the same order the parallel word pass
    // uses below.
    std::int64_t floored = 0;
    for (std::size_t d = 0; d < d_count; ++d) {
      const double* theta_d = theta.row(d).data();
      double ll_d = 0.0;
      for (std::size_t j = corpus.doc_ptr[d]; j < corpus.doc_ptr[d + 1]; ++j) {
        const auto w = static_cast<std::size_t>(corpus.words[j]);
        const auto c = static_cast<double>(corpus.counts[j]);
        const double* phi_w = phi.row(w).data();
        const double z = token_mass(phi_w, theta_d, t_count);
        if (z > 0.0) {
          scatter_counts(out.n_dt.row(d).data(), phi_w, theta_d, t_count, c / z);
          scatter_counts(out.n_wt.row(w).data(), phi_w, theta_d, t_count, c / z);
          ll_d += c * std::log(z);
        } else {
          ll_d += c * std::log(kLogFloor);
          ++floored;
        }
      }
      out.log_likelihood += ll_d;
    }
    out.floored_ll_terms = floored;
    return;
  }

  // Parallel path, two passes. Document pass: every thread owns whole
  // documents, so n_dt rows, per-document likelihoods, and the token masses
  // z are each written by exactly one thread, in the same order a serial
  // loop would use.
  std::vector<double> z_buffer(corpus.nnz());
  std::vector<double> ll_per_doc(d_count);
  std::int64_t floored = 0;
#pragma omp parallel for schedule(static) reduction(+ : floored)
  for (std::size_t d = 0; d < d_count; ++d) {
    ll_per_doc[d] = accumulate_document(corpus, phi, theta, d, z_buffer.data(), &out.n_dt, floored);
  }
  // Fixed-order reduction of the per-document likelihoods.
  for (std::size_t d = 0; d < d_count; ++d) out.log_likelihood += ll_per_doc[d];
  out.floored_ll_terms = floored;

  // Word pass: every thread owns whole n_wt rows; postings are sorted by
  // document, reproducing the serial accumulation order per word.
#pragma omp parallel for schedule(static)
  for (std::size_t w = 0; w < w_count; ++w) {
    const double* phi_w = phi.row(w).data();
    double* acc = out.n_wt.row(w).data();
    for (std::size_t p = columns.word_ptr[w]; p < columns.word_ptr[w + 1]; ++p) {
      const double z = z_buffer[columns.pos_of[p]];
      if (z > 0.0) {
        const auto c = static_cast<double>(corpus.counts[columns.pos_of[p]]);
        scatter_counts(acc, phi_w, theta.row(columns.doc_of[p]).data(), t_count, c / z);
      }
    }
  }
}

double log_likelihood_eval(const Corpus& corpus, const Mat& phi, const Mat& theta,
                           std::int64_t* floored_ll_terms, Exec exec) {
  check_shapes(corpus, phi, theta);
  const std::size_t d_count = corpus.num_docs();
  double total = 0.0;
  std::int64_t floored = 0;

  if (exec == Exec::serial) {
    for (std::size_t d = 0; d < d_count; ++d) {
      total += accumulate_document(corpus, phi, theta, d, nullptr, nullptr, floored);
    }
  } else {
    std::vector<double> ll_per_doc(d_count);
#pragma omp parallel for schedule(static) reduction(+ : floored)
    for (std::size_t d = 0; d < d_count; ++d) {
      ll_per_doc[d] = accumulate_document(corpus, phi, theta, d, nullptr, nullptr, floored);
    }
    for (std::size_t d = 0; d < d_count; ++d) total += ll_per_doc[d];
  }
  if (floored_ll_terms) *floored_ll_terms = floored;
  return total;
}

std::int64_t m_step_phi(const Mat& n_wt, const Mat& r, Mat& phi) {
  const std::size_t w_count = n_wt.rows();
  const std::size_t t_count = n_wt.cols();
  if (!r.empty() && (r.rows() != w_count || r.cols() != t_count)) {
    throw std::invalid_argument("m_step_phi: pseudocount shape mismatch");
  }
  if (phi.rows() != w_count || phi.cols() != t_count) phi = Mat(w_count, t_count);

  std::int64_t resets = 0;
#pragma omp parallel for schedule(static) reduction(+ : resets)
  for (std::size_t t = 0; t < t_count; ++t) {
    double sum = 0.0;
    for (std::size_t w = 0; w < w_count; ++w) {
      const double v = n_wt(w, t) + (r.empty() ? 0.0 : r(w, t));
      const double clipped = v > 0.0 ? v : 0.0;
      phi(w, t) = clipped;
      sum += clipped;
    }
    if (sum > 0.0) {
      for (std::size_t w = 0; w < w_count; ++w) phi(w, t) /= sum;
    } else {
      const double u = 1.0 / static_cast<double>(w_count);
      for (std::size_t w = 0; w < w_count; ++w) phi(w, t) = u;
      ++resets;
    }
  }
  return resets;
}

std::int64_t m_step_theta(const Mat& n_dt, std::span<const double> a, Mat& theta) {
  const std::size_t d_count = n_dt.rows();
  const std::size_t t_count = n_dt.cols();
  if (!a.empty() && a.size() != t_count) {
    throw std::invalid_argument("m_step_theta: pseudocount length mismatch");
  }
  if (theta.rows() != d_count || theta.cols() != t_count) theta = Mat(d_count, t_count);

  std::int64_t resets = 0;
#pragma omp parallel for schedule(static) reduction(+ : resets)
  for (std::size_t d = 0; d < d_count; ++d) {
    double sum = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      const double v = n_dt(d, t) + (a.empty() ? 0.0 : a[t]);
      const double clipped = v > 0.0 ? v : 0.0;
      theta(d, t) = clipped;
      sum += clipped;
    }
    if (sum > 0.0) {
      for (std::size_t t = 0; t < t_count; ++t) theta(d, t) /= sum;
    } else {
      const double u = 1.0 / static_cast<double>(t_count);
      for (std::size_t t = 0; t < t_count; ++t) theta(d, t) = u;
      ++resets;
    }
  }
  return resets;
}

std::vector<double> fold_in_document(const Mat& phi, std::span<const std::int32_t> words,
                                     std::span<const std::int64_t> counts, int iterations,
                                     std::span<const double> theta_pseudo) {
  if (words.empty()) throw std::invalid_argument("fold_in_document: unseen document (no known tokens)");
  if (words.size() != counts.size()) {
    throw std::invalid_argument("fold_in_document: ragged document");
  }
  const std::size_t t_count = phi.cols();
  if (t_count == 0) throw std::invalid_argument("fold_in_document: empty model");
  if (!theta_pseudo.empty() && theta_pseudo.size() != t_count) {
    throw std::invalid_argument("fold_in_document: pseudocount length mismatch");
  }

  std::vector<double> theta_d(t_count, 1.0 / static_cast<double>(t_count));
  std::vector<double> n_t(t_count);
  for (int it = 0; it < iterations; ++it) {
    std::fill(n_t.begin(), n_t.end(), 0.0);
    for (std::size_t j = 0; j < words.size(); ++j) {
      const double* phi_w = phi.row(static_cast<std::size_t>(words[j])).data();
      const auto c = static_cast<double>(counts[j]);
      const double z = token_mass(phi_w, theta_d.data(), t_count);
      if (z > 0.0) scatter_counts(n_t.data(), phi_w, theta_d.data(), t_count, c / z);
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      const double v = n_t[t] + (theta_pseudo.empty() ? 0.0 : theta_pseudo[t]);
      theta_d[t] = v > 0.0 ? v : 0.0;
      sum += theta_d[t];
    }
    if (sum > 0.0) {
      for (double& x : theta_d) x /= sum;
    } else {
      std::fill(theta_d.begin(), theta_d.end(), 1.0 / static_cast<double>(t_count));
    }
  }
  return theta_d;
}

Mat fold_in_corpus(const Corpus& corpus, const Mat& phi, int iterations,
                   std::span<const double> theta_pseudo, Exec exec) {
  if (phi.rows() != corpus.vocab_size()) {
    throw std::invalid_argument("fold_in_corpus: phi row count does not match the vocabulary");
  }
  const std::size_t d_count = corpus.num_docs();
  Mat theta(d_count, phi.cols());

  const auto run_one = [&](std::size_t d) {
    const auto theta_d =
        fold_in_document(phi, corpus.doc_words(d), corpus.doc_counts(d), iterations, theta_pseudo);
    std::copy(theta_d.begin(), theta_d.end(), theta.row(d).begin());
  };

  if (exec == Exec::serial) {
    for (std::size_t d = 0; d < d_count; ++d) run_one(d);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t d = 0; d < d_count; ++d) run_one(d);
  }
  return theta;
}

}  // namespace tscan
