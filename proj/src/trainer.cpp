#include "tscan/trainer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tscan/rng.hpp"

namespace tscan {

std::vector<double> theta_pseudocounts(const ModelSpec& spec) {
  const auto t_count = static_cast<std::size_t>(spec.num_topics);
  switch (spec.family) {
    case ModelFamily::plsa:
    case ModelFamily::decorrelated:
    case ModelFamily::sparse:
    case ModelFamily::sparse_decorrelated:
      return {};
    case ModelFamily::lda_double_symmetric:
      return std::vector<double>(t_count, 1.0 / static_cast<double>(t_count));
    case ModelFamily::lda_asymmetric: {
      // Decaying per-topic smoothing: topic t gets 1/sqrt(t + T).
      std::vector<double> a(t_count);
      for (std::size_t t = 0; t < t_count; ++t) {
        a[t] = 1.0 / std::sqrt(static_cast<double>(t) + static_cast<double>(t_count));
      }
      return a;
    }
    case ModelFamily::lda_heuristic:
      return std::vector<double>(t_count, 50.0 / static_cast<double>(t_count));
  }
  throw std::invalid_argument("theta_pseudocounts: unknown family");
}

namespace {

void add_decorrelation(double tau, const Mat& phi, Mat& r) {
  // Pushes topics apart: each entry is penalized in proportion to how much
  // the same word is used by the other topics, -tau * phi_wt * sum_{s!=t} phi_ws.
  const std::size_t w_count = phi.rows();
  const std::size_t t_count = phi.cols();
  for (std::size_t w = 0; w < w_count; ++w) {
    const double row_total = row_sum(phi, w);
    for (std::size_t t = 0; t < t_count; ++t) {
      r(w, t) += -tau * phi(w, t) * (row_total - phi(w, t));
    }
  }
}

void add_sparse(const ModelSpec& spec, Mat& r) {
  const std::size_t w_count = r.rows();
  const std::size_t t_count = r.cols();
  const auto background = static_cast<std::size_t>(spec.background_topics);
  for (std::size_t w = 0; w < w_count; ++w) {
    for (std::size_t t = 0; t < t_count; ++t) {
      r(w, t) += t < background ? spec.smooth_beta : -spec.sparse_beta;
    }
  }
}

}  // namespace

void phi_pseudocounts(const ModelSpec& spec, const Mat& phi, Mat& r) {
  switch (spec.family) {
    case ModelFamily::plsa:
      r = Mat();
      return;
    case ModelFamily::lda_double_symmetric:
    case ModelFamily::lda_asymmetric:
      r = Mat(phi.rows(), phi.cols(), 1.0 / static_cast<double>(spec.num_topics));
      return;
    case ModelFamily::lda_heuristic:
      r = Mat(phi.rows(), phi.cols(), 0.01);
      return;
    case ModelFamily::decorrelated:
      r = Mat(phi.rows(), phi.cols(), 0.0);
      add_decorrelation(spec.tau, phi, r);
      return;
    case ModelFamily::sparse:
      r = Mat(phi.rows(), phi.cols(), 0.0);
      add_sparse(spec, r);
      return;
    case ModelFamily::sparse_decorrelated:
      r = Mat(phi.rows(), phi.cols(), 0.0);
      add_sparse(spec, r);
      add_decorrelation(spec.tau, phi, r);
      return;
  }
  throw std::invalid_argument("phi_pseudocounts: unknown family");
}

namespace {

void check_finite(const Mat& m, const char* what, std::size_t iteration) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i])) {
      throw std::runtime_error(std::string("train: non-finite value in ") + what +
                               " at iteration " + std::to_string(iteration));
    }
  }
}

// Builds the starting model and leaves the expectation pass at the starting
// parameters in `acc` for the caller's first M-step.
TopicModel init_model(const ModelSpec& spec, const Corpus& corpus, const CorpusColumns& columns,
                      EmAccumulators& acc, Exec exec) {
  spec.validate();
  if (corpus.num_docs() == 0) throw std::invalid_argument("initialize: empty corpus");

  TopicModel model;
  model.spec = spec;
  const auto t_count = static_cast<std::size_t>(spec.num_topics);
  const std::size_t w_count = corpus.vocab_size();

  // Flat-Dirichlet column draws from the spec seed, one column at a time;
  // document mixtures start uniform.
  rng::Engine eng(spec.seed);
  model.phi = Mat(w_count, t_count);
  std::vector<double> column(w_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    rng::dirichlet(eng, 1.0, column);
    for (std::size_t w = 0; w < w_count; ++w) model.phi(w, t) = column[w];
  }
  model.theta = Mat(corpus.num_docs(), t_count, 1.0 / static_cast<double>(t_count));

  em_accumulate(corpus, columns, model.phi, model.theta, acc, exec);
  model.n_wt = acc.n_wt;
  model.log_likelihood = acc.log_likelihood;
  model.diag.floored_ll_terms = acc.floored_ll_terms;
  model.diag.ll_history.push_back(acc.log_likelihood);
  return model;
}

// One M-step + re-evaluation, advancing `model` in place. `acc` must hold
// the expectation pass at the model's current parameters; on return it holds
// the pass at the updated parameters. `r` is scratch for phi pseudocounts.
void advance(TopicModel& model, const Corpus& corpus, const CorpusColumns& columns,
             EmAccumulators& acc, Mat& r, Exec exec) {
  const std::size_t iteration = model.diag.ll_history.empty() ? 0 : model.diag.ll_history.size() - 1;
  phi_pseudocounts(model.spec, model.phi, r);
  const std::vector<double> a = theta_pseudocounts(model.spec);
  model.diag.reset_phi_columns += m_step_phi(acc.n_wt, r, model.phi);
  model.diag.reset_theta_rows += m_step_theta(acc.n_dt, a, model.theta);
  check_finite(model.phi, "phi", iteration);
  check_finite(model.theta, "theta", iteration);

  em_accumulate(corpus, columns, model.phi, model.theta, acc, exec);
  model.n_wt = acc.n_wt;
  model.log_likelihood = acc.log_likelihood;
  model.diag.floored_ll_terms = acc.floored_ll_terms;
  model.diag.ll_history.push_back(acc.log_likelihood);
}

}  // namespace

TopicModel initialize(const ModelSpec& spec, const Corpus& corpus, Exec exec) {
  const CorpusColumns columns = CorpusColumns::build(corpus);
  EmAccumulators acc;
  return init_model(spec, corpus, columns, acc, exec);
}

TopicModel em_step(const TopicModel& model, const Corpus& corpus, Exec exec) {
  const CorpusColumns columns = CorpusColumns::build(corpus);
  EmAccumulators acc;
  em_accumulate(corpus, columns, model.phi, model.theta, acc, exec);

  TopicModel next = model;
  Mat r;
  advance(next, corpus, columns, acc, r, exec);
  return next;
}

TopicModel train(const ModelSpec& spec, const Corpus& corpus, Exec exec) {
  const CorpusColumns columns = CorpusColumns::build(corpus);
  EmAccumulators acc;
  TopicModel model = init_model(spec, corpus, columns, acc, exec);
  Mat r;
  for (int it = 0; it < spec.iterations; ++it) {
    advance(model, corpus, columns, acc, r, exec);
  }
  return model;
}

double log_likelihood(const TopicModel& model, const Corpus& corpus, Exec exec) {
  return log_likelihood_eval(corpus, model.phi, model.theta, nullptr, exec);
}

Mat infer_mixtures(const TopicModel& model, const Corpus& heldout, int iterations, Exec exec) {
  return fold_in_corpus(heldout, model.phi, iterations, theta_pseudocounts(model.spec), exec);
}

}  // namespace tscan
