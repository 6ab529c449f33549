#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tscan/corpus.hpp"
#include "tscan/rng.hpp"
#include "tscan/stability.hpp"
#include "tscan/trainer.hpp"

using namespace tscan;

namespace {

double brute_force_assignment(const Mat& cost) {
  const std::size_t n = cost.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Mat random_cost(std::size_t n, std::uint64_t seed) {
  rng::Engine eng(seed);
  Mat cost(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost(i, j) = rng::uniform01(eng);
  }
  return cost;
}

TopicModel tiny_model(Mat phi) {
  TopicModel model;
  model.spec.num_topics = static_cast<int>(phi.cols());
  model.phi = std::move(phi);
  model.theta = Mat(2, model.spec.num_topics, 1.0 / model.spec.num_topics);
  model.n_wt = Mat(model.phi.rows(), model.phi.cols());
  return model;
}

// A corpus of identical documents: every subsample of equal size trains to
// the same word distributions, whatever the document subset.
Corpus clone_corpus(int docs) {
  Vocabulary v;
  v.tokens = {"a", "b", "c", "d", "e"};
  std::vector<DocEntries> entries;
  for (int d = 0; d < docs; ++d) {
    entries.push_back({d + 1, {{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 1}}});
  }
  return Corpus::from_documents(std::move(v), std::move(entries));
}

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("set distance over sorted token ids") {
    const std::vector<std::int32_t> a = {1, 2, 3};
    const std::vector<std::int32_t> b = {2, 3, 4};
    CHECK(jaccard_distance(a, b) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(jaccard_distance(a, a) == 0.0);
    const std::vector<std::int32_t> c = {7, 9};
    CHECK(jaccard_distance(a, c) == 1.0);
    const std::vector<std::int32_t> empty;
    CHECK(jaccard_distance(a, empty) == 1.0);
    CHECK_THROWS_AS(jaccard_distance(empty, empty), std::invalid_argument);
    // Symmetry on random sets.
    CHECK(jaccard_distance(b, a) == jaccard_distance(a, b));
  }

  TEST_CASE("assignment solver matches brute force on random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t n = 2 + seed % 5;  // sizes 2..6
      const Mat cost = random_cost(n, seed);
      const AssignmentResult result = linear_sum_assignment(cost);
      CAPTURE(seed);
      CHECK(result.total_cost == doctest::Approx(brute_force_assignment(cost)).epsilon(1e-12));

      // The permutation is a bijection consistent with the reported cost.
      std::vector<bool> used(n, false);
      double total = 0.0;
      REQUIRE(result.permutation.size() == n);
      for (std::size_t i = 0; i < n; ++i) {
        const int j = result.permutation[i];
        REQUIRE(j >= 0);
        REQUIRE(static_cast<std::size_t>(j) < n);
        CHECK(!used[j]);
        used[j] = true;
        total += cost(i, j);
        CHECK(result.matched_distances[i] == cost(i, j));
      }
      CHECK(total == doctest::Approx(result.total_cost).epsilon(1e-12));
      CHECK(result.mean_distance ==
            doctest::Approx(result.total_cost / static_cast<double>(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("assignment solver handles edge shapes and bad input") {
    Mat one(1, 1);
    one(0, 0) = 3.5;
    const AssignmentResult r = linear_sum_assignment(one);
    CHECK(r.permutation == std::vector<int>{0});
    CHECK(r.total_cost == 3.5);

    // Identity is optimal and must be picked deterministically under ties.
    Mat flat(4, 4, 1.0);
    const AssignmentResult tie_a = linear_sum_assignment(flat);
    const AssignmentResult tie_b = linear_sum_assignment(flat);
    CHECK(tie_a.permutation == tie_b.permutation);
    CHECK(tie_a.total_cost == 4.0);

    Mat rect(2, 3);
    CHECK_THROWS_AS(linear_sum_assignment(rect), std::invalid_argument);
    Mat bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(linear_sum_assignment(bad), std::invalid_argument);
  }

  TEST_CASE("model distance is permutation-invariant and symmetric") {
    // Three topics with disjoint-ish top tokens.
    Mat phi(9, 3, 0.01);
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t w = 3 * t; w < 3 * t + 3; ++w) phi(w, t) = 0.3;
    }
    const TopicModel a = tiny_model(phi);

    // Same topics, columns shuffled: a perfect matching exists.
    Mat shuffled(9, 3, 0.0);
    const int perm[3] = {2, 0, 1};
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t w = 0; w < 9; ++w) shuffled(w, perm[t]) = phi(w, t);
    }
    const TopicModel b = tiny_model(std::move(shuffled));

    CHECK(model_distance(a, a, 3) == 0.0);
    CHECK(model_distance(a, b, 3) == 0.0);

    // Totally disjoint token sets are at distance 1.
    Mat disjoint(9, 3, 0.0);
    for (std::size_t t = 0; t < 3; ++t) {
      // Give probability only to tokens the first model never ranks: reuse
      // indices but shift by a block so top-1 sets are disjoint.
      disjoint((3 * t + 1) % 9, t) = 1.0;
    }
    const TopicModel c = tiny_model(std::move(disjoint));
    const double ab = model_distance(a, c, 1);
    CHECK(ab == model_distance(c, a, 1));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }

  TEST_CASE("stability config validation") {
    StabilityConfig config;
    CHECK_NOTHROW(config.validate());
    StabilityConfig bad = config;
    bad.subsamples = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.fraction = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.top_k = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.max_pairs = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("identical subsample models give exactly zero instability") {
    const Corpus corpus = clone_corpus(24);
    ModelSpec spec;
    spec.family = ModelFamily::plsa;
    spec.seed = 3;
    spec.iterations = 8;
    StabilityConfig config;
    config.subsamples = 4;
    config.fraction = 0.5;
    const InstabilityResult result = instability(corpus, spec, config, 2);
    REQUIRE(result.pair_distances.size() == 6);
    for (const double d : result.pair_distances) CHECK(d == 0.0);
    CHECK(result.value == 0.0);
  }

  TEST_CASE("instability is bounded, deterministic, and caps its pair count") {
    const SyntheticCorpus synth = synthesize_corpus(4, 40, 40, 20, 0.1, 13);
    ModelSpec spec;
    spec.family = ModelFamily::plsa;
    spec.seed = 0;
    spec.iterations = 6;
    StabilityConfig config;
    config.subsamples = 4;
    config.fraction = 0.6;
    config.top_k = 5;

    const InstabilityResult a = instability(synth.corpus, spec, config, 3);
    CHECK(a.pair_distances.size() == 6);
    CHECK(a.value >= 0.0);
    CHECK(a.value <= 1.0);
    double mean = 0.0;
    for (const double d : a.pair_distances) {
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      mean += d;
    }
    CHECK(a.value == doctest::Approx(mean / 6.0).epsilon(1e-15));

    const InstabilityResult b = instability(synth.corpus, spec, config, 3);
    CHECK(b.value == a.value);
    CHECK(b.pair_distances == a.pair_distances);

    const InstabilityResult serial = instability(synth.corpus, spec, config, 3, Exec::serial);
    CHECK(serial.value == a.value);

    StabilityConfig capped = config;
    capped.max_pairs = 2;
    const InstabilityResult c = instability(synth.corpus, spec, capped, 3);
    REQUIRE(c.pair_distances.size() == 2);
    // The capped prefix walks pairs in lexicographic order: (0,1), (0,2).
    CHECK(c.pair_distances[0] == a.pair_distances[0]);
    CHECK(c.pair_distances[1] == a.pair_distances[1]);

    // Different base seeds draw different subsamples.
    StabilityConfig reseeded = config;
    reseeded.base_seed = 1000;
    const InstabilityResult d = instability(synth.corpus, spec, reseeded, 3);
    CHECK(d.value != a.value);
  }
}
