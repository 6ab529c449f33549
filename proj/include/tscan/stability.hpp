#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/kernels.hpp"
#include "tscan/mat.hpp"
#include "tscan/model.hpp"

namespace tscan {

struct StabilityConfig {
  int subsamples = 5;       // S: number of subsample models, >= 2
  double fraction = 0.5;    // document fraction per subsample, in (0, 1)
  std::uint64_t base_seed = 0;  // subsample s uses seed base_seed + s
  int top_k = 10;           // tokens per topic entering the Jaccard sets
  int max_pairs = 0;        // 0 = compare all C(S,2) pairs

  void validate() const;
};

// 1 - |a ∩ b| / |a ∪ b| over sorted, duplicate-free token-id sets.
// Throws std::invalid_argument when both sets are empty.
double jaccard_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

struct AssignmentResult {
  std::vector<int> permutation;           // row i matched to column permutation[i]
  std::vector<double> matched_distances;  // cost(i, permutation[i]) per row
  double mean_distance = 0.0;
  double total_cost = 0.0;
};

// Exact minimum-cost bipartite matching on a square cost matrix
// (shortest-augmenting-path algorithm, O(n^3)). Ties between equal-cost
// permutations are broken deterministically. Throws on non-square or
// non-finite input.
AssignmentResult linear_sum_assignment(const Mat& cost);

// Topic-matching distance between two models with equal T: Jaccard distances
// between top_k token sets of every topic pair, solved as an assignment
// problem; returns the mean matched distance (in [0, 1]).
double model_distance(const TopicModel& a, const TopicModel& b, int top_k);

struct InstabilityResult {
  double value = 0.0;                    // mean pair distance, in [0, 1]
  std::vector<double> pair_distances;    // one entry per compared pair, (i,j) i<j in lexicographic order
};

// The subsample-stability estimate at topic count t: draws config.subsamples
// document subsamples (seeds base_seed, base_seed+1, ...), trains one model
// per subsample from the template spec with num_topics = t (all trainings
// share the template's initialization seed), and averages model_distance
// over all unordered pairs (optionally capped at max_pairs, taken in
// lexicographic order). Deterministic for fixed inputs.
InstabilityResult instability(const Corpus& corpus, const ModelSpec& spec_template,
                              const StabilityConfig& config, int t,
                              Exec exec = Exec::parallel);

}  // namespace tscan
