#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "tscan/rng.hpp"

using namespace tscan;

TEST_SUITE("rng") {
  TEST_CASE("uniform01 stays in [0,1) and is reproducible") {
    rng::Engine a(42), b(42);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double x = rng::uniform01(a);
      CHECK(x == rng::uniform01(b));
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    // With 20000 draws the extremes should come close to the interval ends.
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
  }

  TEST_CASE("uniform_below covers every residue and respects the bound") {
    rng::Engine eng(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t x = rng::uniform_below(eng, 7);
      CHECK(x < 7);
      seen.insert(x);
    }
    CHECK(seen.size() == 7);
    CHECK_THROWS_AS(rng::uniform_below(eng, 0), std::invalid_argument);
  }

  TEST_CASE("exponential and normal have the right first moments") {
    rng::Engine eng(7);
    double exp_sum = 0.0, norm_sum = 0.0, norm_sq = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
      const double e = rng::exponential(eng);
      CHECK(e >= 0.0);
      exp_sum += e;
      const double z = rng::normal(eng);
      norm_sum += z;
      norm_sq += z * z;
    }
    CHECK(exp_sum / n == doctest::Approx(1.0).epsilon(0.05));
    CHECK(norm_sum / n == doctest::Approx(0.0).epsilon(1.0).scale(0.05));
    CHECK(norm_sq / n == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("gamma matches its mean for shapes above and below one") {
    for (const double shape : {0.05, 0.5, 1.0, 2.5, 9.0}) {
      rng::Engine eng(11);
      double sum = 0.0;
      const int n = 50000;
      for (int i = 0; i < n; ++i) {
        const double g = rng::gamma(eng, shape);
        CHECK(g >= 0.0);
        sum += g;
      }
      CHECK(sum / n == doctest::Approx(shape).epsilon(0.08));
    }
    rng::Engine eng(0);
    CHECK_THROWS_AS(rng::gamma(eng, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rng::gamma(eng, -1.0), std::invalid_argument);
  }

  TEST_CASE("dirichlet samples are distributions for any concentration") {
    for (const double conc : {1e-300, 0.05, 1.0, 50.0}) {
      rng::Engine eng(3);
      std::vector<double> x(17);
      for (int rep = 0; rep < 50; ++rep) {
        rng::dirichlet(eng, conc, x);
        double total = 0.0;
        for (const double v : x) {
          CHECK(v >= 0.0);
          CHECK(std::isfinite(v));
          total += v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("categorical walks the cumulative weights in index order") {
    const std::vector<double> w = {0.2, 0.3, 0.5};
    CHECK(rng::categorical(w, 0.0) == 0);
    CHECK(rng::categorical(w, 0.19) == 0);
    CHECK(rng::categorical(w, 0.21) == 1);
    CHECK(rng::categorical(w, 0.49) == 1);
    CHECK(rng::categorical(w, 0.51) == 2);
    CHECK(rng::categorical(w, 0.999999) == 2);

    const std::vector<double> leading_zero = {0.0, 1.0};
    CHECK(rng::categorical(leading_zero, 0.0) == 1);

    const std::vector<double> zeros = {0.0, 0.0};
    CHECK_THROWS_AS(rng::categorical(zeros, 0.5), std::invalid_argument);
  }

  TEST_CASE("sample_without_replacement returns sorted distinct indices") {
    rng::Engine eng(5);
    for (int rep = 0; rep < 200; ++rep) {
      const auto s = rng::sample_without_replacement(eng, 30, 12);
      REQUIRE(s.size() == 12);
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i] < 30);
        if (i > 0) CHECK(s[i - 1] < s[i]);
      }
    }
    rng::Engine a(9), b(9);
    CHECK(rng::sample_without_replacement(a, 100, 40) ==
          rng::sample_without_replacement(b, 100, 40));

    rng::Engine c(1);
    const auto all = rng::sample_without_replacement(c, 8, 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(all[i] == i);

    CHECK(rng::sample_without_replacement(c, 8, 0).empty());
    CHECK_THROWS_AS(rng::sample_without_replacement(c, 3, 4), std::invalid_argument);
  }
}
