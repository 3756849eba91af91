#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "accc/ari.hpp"
#include "accc/config.hpp"
#include "accc/harness.hpp"
#include "accc/objectives.hpp"
#include "support/brute_force.hpp"

using namespace accc;
namespace ts = accc::test_support;

TEST_CASE("adjusted rand index") {
  Clustering a({0, 0, 1, 1});
  CHECK(adjusted_rand_index(a, a) == doctest::Approx(1.0));
  CHECK(adjusted_rand_index(a, Clustering({0, 1, 0, 1})) == doctest::Approx(-0.5));
  CHECK(adjusted_rand_index(a, Clustering({5, 5, 2, 2})) == doctest::Approx(1.0));

  // Degenerate pairs with a vanishing denominator
  CHECK(adjusted_rand_index(Clustering::singletons(4), Clustering::singletons(4)) == 1.0);
  CHECK(adjusted_rand_index(Clustering::single_cluster(4), Clustering::single_cluster(4)) == 1.0);
  CHECK(adjusted_rand_index(Clustering::singletons(4), Clustering::single_cluster(4)) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(adjusted_rand_index(a, Clustering({0, 1})), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Clustering c1(ts::random_labels(10, 4, rng));
    Clustering c2(ts::random_labels(10, 3, rng));
    std::vector<int> renamed(c2.labels());
    for (int& l : renamed) l = 500 - 9 * l;
    CHECK(adjusted_rand_index(c1, c2) == doctest::Approx(adjusted_rand_index(c1, Clustering(renamed))));
    CHECK(adjusted_rand_index(c1, c2) >= -1.0);
    CHECK(adjusted_rand_index(c1, c2) <= 1.0);
  }
}

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.synthetic = {12, 3, 4, 1.0};
  cfg.batch_size = 6;
  cfg.budget = 30;
  cfg.gamma = 0.0;
  cfg.strategy = strategy_from_id("coverage-cost-hard");
  cfg.strategy.switch_iter = 3;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("budget accounting: one round when budget equals batch, q_i = i*B") {
  ExperimentConfig cfg = small_config();
  cfg.batch_size = 10;
  cfg.budget = 10;
  Dataset data = build_dataset(cfg);
  auto records = run_active_cc(cfg, data);
  REQUIRE(records.size() == 2);  // one querying round plus the final record
  CHECK(records[0].queries == 0);
  CHECK(records[0].batch.size() == 10);
  CHECK(records[1].queries == 10);
  CHECK(records[1].batch.empty());

  cfg = small_config();
  Dataset d2 = build_dataset(cfg);
  auto r2 = run_active_cc(cfg, d2);
  REQUIRE(r2.size() == 6);  // 30/6 rounds + final
  for (std::size_t i = 0; i < r2.size(); ++i) {
    CHECK(r2[i].iter == static_cast<int>(i));
    CHECK(r2[i].queries == static_cast<long long>(i) * 6);
    CHECK(r2[i].ari >= -1.0);
    CHECK(r2[i].ari <= 1.0);
  }
}

TEST_CASE("a truncated final batch lands exactly on the budget") {
  ExperimentConfig cfg = small_config();
  cfg.batch_size = 7;
  cfg.budget = 10;
  auto records = run_active_cc(cfg, build_dataset(cfg));
  REQUIRE(records.size() == 3);
  CHECK(records[0].batch.size() == 7);
  CHECK(records[1].batch.size() == 3);
  CHECK(records[2].queries == 10);
}

TEST_CASE("no pair is queried twice across a whole run") {
  ExperimentConfig cfg = small_config();
  cfg.gamma = 0.4;
  cfg.budget = 66;  // the full pair set of n = 12
  cfg.batch_size = 5;
  auto records = run_active_cc(cfg, build_dataset(cfg));
  std::set<std::pair<int, int>> seen;
  long long total = 0;
  for (const auto& r : records) {
    for (const auto& p : r.batch) {
      CHECK(seen.insert(p).second);
      ++total;
    }
  }
  CHECK(total == 66);
  CHECK(records.back().queries == 66);
}

TEST_CASE("identical config and seed give byte-identical serialized records") {
  ExperimentConfig cfg = small_config();
  cfg.gamma = 0.4;
  Dataset data = build_dataset(cfg);
  auto a = run_active_cc(cfg, data);
  auto b = run_active_cc(cfg, data);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json_line(a[i]) == to_json_line(b[i]));
  }
}

TEST_CASE("noise-free full query budget recovers the ground truth") {
  ExperimentConfig cfg;
  cfg.synthetic = {8, 2, 4, 1.0};
  cfg.gamma = 0.0;
  cfg.batch_size = 28;
  cfg.budget = 28;  // everything in one round
  cfg.strategy = strategy_from_id("uniform");
  Dataset data = build_dataset(cfg);
  auto records = run_active_cc(cfg, data);
  CHECK(records.back().ari == doctest::Approx(1.0));

  // The final clustering's objective matches the exhaustive optimum over the
  // fully revealed similarities.
  SimilarityState full(8);
  for (int u = 0; u < 8; ++u) {
    for (int v = u + 1; v < 8; ++v) {
      full.set_prior(u, v, ground_truth_similarity(data.labels, u, v));
    }
  }
  auto best = ts::exhaustive_min(full, [&](const Clustering& c) { return mc_cost(c, full); });
  CHECK(records.back().mc == doctest::Approx(best.best));
}

TEST_CASE("revealed warm-start pairs are honored") {
  ExperimentConfig cfg = small_config();
  cfg.reveal_fraction = 0.5;
  cfg.budget = 33;
  cfg.batch_size = 33;
  auto records = run_active_cc(cfg, build_dataset(cfg));
  // 33 of 66 pairs were pre-answered, so only 33 remain queryable.
  CHECK(records.back().queries == 33);

  cfg.reveal_mark_queried = false;
  auto records2 = run_active_cc(cfg, build_dataset(cfg));
  CHECK(records2.back().queries == 33);  // budget still caps the loop
  CHECK(records2.size() == 2);
}

TEST_CASE("run_repetitions aggregates per level and keeps failures isolated") {
  ExperimentConfig cfg = small_config();
  Dataset data = build_dataset(cfg);
  auto single = run_repetitions(cfg, data, {42});
  REQUIRE(single.runs.size() == 1);
  CHECK(single.runs[0].ok);
  REQUIRE(single.aggregate.size() == single.runs[0].records.size());
  for (std::size_t i = 0; i < single.aggregate.size(); ++i) {
    CHECK(single.aggregate[i].ari_mean == doctest::Approx(single.runs[0].records[i].ari));
    CHECK(single.aggregate[i].ari_median == doctest::Approx(single.runs[0].records[i].ari));
    CHECK(single.aggregate[i].ari_std == 0.0);
    CHECK(single.aggregate[i].runs == 1);
  }

  auto dup = run_repetitions(cfg, data, {7, 7});
  REQUIRE(dup.runs.size() == 2);
  for (std::size_t i = 0; i < dup.runs[0].records.size(); ++i) {
    CHECK(to_json_line(dup.runs[0].records[i]) == to_json_line(dup.runs[1].records[i]));
  }
  for (const auto& row : dup.aggregate) {
    CHECK(row.runs == 2);
    CHECK(row.ari_std == 0.0);
  }
  CHECK_THROWS_AS(run_repetitions(cfg, data, {}), ConfigError);
}

TEST_CASE("config validation catches bad setups before round zero") {
  ExperimentConfig cfg = small_config();
  Dataset data = build_dataset(cfg);
  cfg.budget = 1000;  // exceeds the 66 available pairs
  CHECK_THROWS_AS(validate_config(cfg, data), ConfigError);
  cfg = small_config();
  cfg.batch_size = 0;
  CHECK_THROWS_AS(validate_config(cfg, data), ConfigError);
  cfg = small_config();
  cfg.budget = 3;  // below batch_size
  CHECK_THROWS_AS(validate_config(cfg, data), ConfigError);
  cfg = small_config();
  cfg.gamma = 1.5;
  CHECK_THROWS_AS(validate_config(cfg, data), ConfigError);
  cfg = small_config();
  cfg.init = InitKind::kmeans;
  Dataset featureless;
  featureless.n = 12;
  featureless.labels.assign(12, 0);
  CHECK_THROWS_AS(validate_config(cfg, featureless), ConfigError);
}

TEST_CASE("config text parsing") {
  const std::string text =
      "# experiment\n"
      "dataset = synthetic\n"
      "synthetic_n = 40\n"
      "synthetic_k = 4\n"
      "strategy = coverage-mu-soft\n"
      "switch_iter = 12\n"
      "batch_size = 9\n"
      "budget = 90\n"
      "gamma = 0.25\n"
      "seed = 123\n"
      "mf_warm_start = true\n"
      "output_dir = /tmp/accc_out\n";
  ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.synthetic.n == 40);
  CHECK(strategy_id(cfg.strategy) == "coverage-mu-soft");
  CHECK(cfg.strategy.switch_iter == 12);
  CHECK(cfg.batch_size == 9);
  CHECK(cfg.budget == 90);
  CHECK(cfg.gamma == doctest::Approx(0.25));
  CHECK(cfg.seed == 123);
  CHECK(cfg.mf_warm_start);
  CHECK(cfg.output_dir == "/tmp/accc_out");

  CHECK_THROWS_AS(parse_config_text("nonsense_key = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("batch_size = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("strategy = nope\n"), ConfigError);
}

TEST_CASE("json line format is stable") {
  RoundRecord r;
  r.iter = 2;
  r.queries = 100;
  r.ari = 0.5;
  r.k = 4;
  r.mc = -12.25;
  r.batch = {{0, 3}, {1, 2}};
  CHECK(to_json_line(r) ==
        "{\"iter\":2,\"queries\":100,\"ari\":0.5,\"k\":4,\"mc\":-12.25,\"batch\":[[0,3],[1,2]]}");
}
