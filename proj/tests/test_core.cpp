#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "accc/objectives.hpp"
#include "accc/rng.hpp"
#include "support/brute_force.hpp"

using namespace accc;
namespace ts = accc::test_support;

TEST_CASE("clustering canonicalizes labels in first-occurrence order") {
  Clustering c({7, 7, 3, 7, 9});
  CHECK(c.labels() == std::vector<int>{0, 0, 1, 0, 2});
  CHECK(c.num_clusters() == 3);
  CHECK(c == Clustering({1, 1, 0, 1, 2}));
  CHECK(c.cluster_sizes() == std::vector<int>{3, 1, 1});
  CHECK(Clustering::singletons(3).num_clusters() == 3);
  CHECK(Clustering::single_cluster(4).num_clusters() == 1);
  CHECK_THROWS_AS(Clustering(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("similarity state enforces symmetry and the query-once rule") {
  SimilarityState s(3);
  CHECK(s.num_pairs() == 3);
  s.set_prior(0, 1, 0.5);
  CHECK(s.s(1, 0) == 0.5);
  CHECK_FALSE(s.queried(0, 1));
  s.set_prior(0, 1, -0.25);  // priors stay writable
  CHECK(s.s(0, 1) == -0.25);

  s.record_answer(0, 1, 1.0);
  CHECK(s.queried(1, 0));
  CHECK(s.num_queried() == 1);
  CHECK_THROWS_AS(s.record_answer(0, 1, 0.0), std::logic_error);
  CHECK_THROWS_AS(s.set_prior(1, 0, 0.0), std::logic_error);

  CHECK_THROWS_AS(s.set_prior(0, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(s.set_prior(0, 2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(s.s(0, 5), std::out_of_range);
}

TEST_CASE("violation predicate") {
  SimilarityState s(3);
  s.set_prior(0, 1, -0.5);
  s.set_prior(0, 2, 1.0);
  Clustering same = Clustering::single_cluster(3);
  Clustering split({0, 1, 0});

  CHECK(violates(0, 1, same, s));        // negative pair inside a cluster
  CHECK_FALSE(violates(0, 2, same, s));  // positive pair inside a cluster
  CHECK(violates(1, 2, split, s));       // S = 0 counts as similar, so splitting violates
  CHECK_THROWS_AS(violates(0, 0, same, s), std::invalid_argument);
  CHECK_THROWS_AS(violates(0, 7, same, s), std::out_of_range);
}

TEST_CASE("cc_cost examples") {
  SimilarityState s(3);
  s.set_prior(0, 1, -1.0);
  s.set_prior(0, 2, -1.0);
  s.set_prior(1, 2, -1.0);
  CHECK(cc_cost(Clustering::single_cluster(3), s) == doctest::Approx(3.0));
  CHECK(cc_cost(Clustering::singletons(3), s) == doctest::Approx(0.0));

  SimilarityState t(3);
  t.set_prior(0, 1, 1.0);
  t.set_prior(0, 2, -1.0);
  t.set_prior(1, 2, -1.0);
  CHECK(cc_cost(Clustering({0, 0, 1}), t) == doctest::Approx(0.0));
}

TEST_CASE("mc_cost examples") {
  SimilarityState t(3);
  t.set_prior(0, 1, 1.0);
  t.set_prior(0, 2, -1.0);
  t.set_prior(1, 2, -1.0);
  CHECK(mc_cost(Clustering::singletons(3), t) == doctest::Approx(0.0));
  CHECK(mc_cost(Clustering({0, 0, 1}), t) == doctest::Approx(-1.0));

  SimilarityState z(4);
  CHECK(mc_cost(Clustering::single_cluster(4), z) == doctest::Approx(0.0));

  Clustering wrong_size({0, 1});
  CHECK_THROWS_AS(mc_cost(wrong_size, t), std::invalid_argument);
}

TEST_CASE("cc_cost - mc_cost equals the clustering-independent positive mass") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);  // up to 10
    SimilarityState s = ts::random_similarity(n, rng);
    double positive_mass = 0.0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (s.s(u, v) >= 0.0) positive_mass += s.s(u, v);
      }
    }
    Clustering c(ts::random_labels(n, 1 + static_cast<int>(rng() % n), rng));
    CHECK(std::abs(cc_cost(c, s) - mc_cost(c, s) - positive_mass) <= 1e-9);
  }
}

TEST_CASE("both objectives share their minimizer sets on small instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6
    SimilarityState s = ts::random_similarity(n, rng);
    auto cc = ts::exhaustive_min(s, [&](const Clustering& c) { return cc_cost(c, s); });
    auto mc = ts::exhaustive_min(s, [&](const Clustering& c) { return mc_cost(c, s); });
    REQUIRE(cc.argmins.size() == mc.argmins.size());
    CHECK(cc.argmins == mc.argmins);
  }
}

TEST_CASE("costs are invariant under cluster relabeling") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    SimilarityState s = ts::random_similarity(n, rng);
    std::vector<int> labels = ts::random_labels(n, 3, rng);
    Clustering c(labels);
    // Push every label through an arbitrary injective renaming.
    std::vector<int> renamed(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) renamed[i] = 1000 - 7 * labels[i];
    Clustering relabeled(renamed);
    CHECK(cc_cost(c, s) == doctest::Approx(cc_cost(relabeled, s)));
    CHECK(mc_cost(c, s) == doctest::Approx(mc_cost(relabeled, s)));
  }
}
