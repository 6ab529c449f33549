#pragma once

#include <span>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/kernels.hpp"
#include "tscan/model.hpp"

namespace tscan {

// Per-topic pseudocounts a_t added to document mixtures in the M-step.
// Empty means none (families without document smoothing).
std::vector<double> theta_pseudocounts(const ModelSpec& spec);

// Per-entry pseudocounts r_wt added to word counts in the M-step. The
// decorrelated families depend on the current phi; r is resized and filled.
// Empty result means none.
void phi_pseudocounts(const ModelSpec& spec, const Mat& phi, Mat& r);

// Random starting point: phi columns and theta rows are flat-Dirichlet draws
// from the spec seed. n_wt and log_likelihood are evaluated at the starting
// parameters so every invariant of TopicModel already holds.
TopicModel initialize(const ModelSpec& spec, const Corpus& corpus, Exec exec = Exec::parallel);

// One EM sweep: expectation pass at the current parameters, then the
// pseudocounted M-step. The returned model carries the post-update phi and
// theta, with n_wt and log_likelihood re-evaluated at those new parameters.
TopicModel em_step(const TopicModel& model, const Corpus& corpus, Exec exec = Exec::parallel);

// initialize + spec.iterations sweeps. Throws std::runtime_error if a
// non-finite value appears in any matrix. diag.ll_history records the
// likelihood trajectory (one entry per sweep start plus the final value).
TopicModel train(const ModelSpec& spec, const Corpus& corpus, Exec exec = Exec::parallel);

// Training log-likelihood of an existing model on a corpus with the same
// vocabulary and document count (uses the model's theta as-is).
double log_likelihood(const TopicModel& model, const Corpus& corpus, Exec exec = Exec::parallel);

// Document mixtures for held-out documents, inferred against the model's
// frozen phi with the family's theta pseudocounts applied.
Mat infer_mixtures(const TopicModel& model, const Corpus& heldout, int iterations,
                   Exec exec = Exec::parallel);

}  // namespace tscan
