#include "tscan/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tscan/metrics.hpp"
#include "tscan/trainer.hpp"

namespace tscan {

void StabilityConfig::validate() const {
  if (subsamples < 2) throw std::invalid_argument("stability: needs at least 2 subsamples");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("stability: fraction must lie in (0, 1)");
  }
  if (top_k < 1) throw std::invalid_argument("stability: top_k must be >= 1");
  if (max_pairs < 0) throw std::invalid_argument("stability: max_pairs must be >= 0");
}

double jaccard_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.empty() && b.empty()) {
    throw std::invalid_argument("jaccard_distance: both sets are empty");
  }
  std::size_t i = 0, j = 0, shared = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  const std::size_t unioned = a.size() + b.size() - shared;
  return 1.0 - static_cast<double>(shared) / static_cast<double>(unioned);
}

AssignmentResult linear_sum_assignment(const Mat& cost) {
  const std::size_t n = cost.rows();
  if (n == 0 || cost.cols() != n) {
    throw std::invalid_argument("linear_sum_assignment: matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < cost.size(); ++i) {
    if (!std::isfinite(cost.data()[i])) {
      throw std::invalid_argument("linear_sum_assignment: non-finite cost entry");
    }
  }

  // Shortest-augmenting-path formulation with dual potentials, O(n^3).
  // Indices are shifted by one; column 0 is the virtual start of each path.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_reduced(n + 1, inf);
    std::vector<bool> visited(n + 1, false);
    do {
      visited[j0] = true;
      const std::size_t i0 = match[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (visited[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          way[j] = j0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    // Unwind the augmenting path.
    while (j0 != 0) {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }

  AssignmentResult result;
  result.permutation.assign(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    result.permutation[match[j] - 1] = static_cast<int>(j - 1);
  }
  result.matched_distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cost(i, static_cast<std::size_t>(result.permutation[i]));
    result.matched_distances[i] = c;
    result.total_cost += c;
  }
  result.mean_distance = result.total_cost / static_cast<double>(n);
  return result;
}

double model_distance(const TopicModel& a, const TopicModel& b, int top_k) {
  if (a.num_topics() != b.num_topics()) {
    throw std::invalid_argument("model_distance: topic counts differ");
  }
  TopTokens tops_a = top_tokens(a.phi, top_k);
  TopTokens tops_b = top_tokens(b.phi, top_k);
  // Jaccard comparison wants sorted sets, not probability-ranked lists.
  for (auto& tokens : tops_a.per_topic) std::sort(tokens.begin(), tokens.end());
  for (auto& tokens : tops_b.per_topic) std::sort(tokens.begin(), tokens.end());

  const std::size_t t_count = a.num_topics();
  Mat cost(t_count, t_count);
  for (std::size_t i = 0; i < t_count; ++i) {
    for (std::size_t j = 0; j < t_count; ++j) {
      cost(i, j) = jaccard_distance(tops_a.per_topic[i], tops_b.per_topic[j]);
    }
  }
  return linear_sum_assignment(cost).mean_distance;
}

InstabilityResult instability(const Corpus& corpus, const ModelSpec& spec_template,
                              const StabilityConfig& config, int t, Exec exec) {
  config.validate();
  if (t < 1) throw std::invalid_argument("instability: t must be >= 1");

  ModelSpec spec = spec_template;
  spec.num_topics = t;
  spec.validate();

  const auto s_count = static_cast<std::size_t>(config.subsamples);
  std::vector<TopicModel> models(s_count);
  std::vector<std::string> failures(s_count);
  // Independent trainings; all share the template's initialization seed, so
  // only the subsampled documents differ between them.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < s_count; ++s) {
    try {
      const Corpus sub =
          subsample_corpus(corpus, config.fraction, config.base_seed + s);
      models[s] = train(spec, sub, exec);
    } catch (const std::exception& e) {
      failures[s] = e.what();
    }
  }
  for (std::size_t s = 0; s < s_count; ++s) {
    if (!failures[s].empty()) {
      throw std::runtime_error("instability: training on subsample " + std::to_string(s) +
                               " failed: " + failures[s]);
    }
  }

  InstabilityResult result;
  for (std::size_t i = 0; i < s_count; ++i) {
    for (std::size_t j = i + 1; j < s_count; ++j) {
      if (config.max_pairs > 0 &&
          result.pair_distances.size() >= static_cast<std::size_t>(config.max_pairs)) {
        break;
      }
      result.pair_distances.push_back(model_distance(models[i], models[j], config.top_k));
    }
  }
  double sum = 0.0;
  for (const double d : result.pair_distances) sum += d;
  result.value = result.pair_distances.empty()
                     ? 0.0
                     : sum / static_cast<double>(result.pair_distances.size());
  return result;
}

}  // namespace tscan
