#include "accc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "accc/ari.hpp"
#include "accc/objectives.hpp"
#include "accc/rng.hpp"

namespace accc {

namespace {

// Stream tags for deriving per-round RNGs from the master seed, so strategy
// variants with different per-round randomness consumption stay comparable.
enum Stream : std::uint64_t {
  kStreamDataset = 1,
  kStreamKmeansInit = 2,
  kStreamSolver = 3,
  kStreamMeanField = 4,
  kStreamStrategy = 5,
  kStreamOracle = 6,
  kStreamReveal = 7,
};

}  // namespace

Dataset build_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset == "synthetic") {
    auto rng = make_rng(cfg.dataset_seed, kStreamDataset);
    return synthetic_dataset(cfg.synthetic.n, cfg.synthetic.k, cfg.synthetic.dim,
                             cfg.synthetic.spread, rng);
  }
  if (cfg.dataset == "csv") {
    if (cfg.csv_path.empty()) throw ConfigError("csv dataset needs csv_path");
    return load_feature_csv(cfg.csv_path);
  }
  throw ConfigError("unknown dataset kind: " + cfg.dataset);
}

void validate_config(const ExperimentConfig& cfg, const Dataset& data) {
  if (data.n < 2) throw ConfigError("dataset must contain at least 2 objects");
  const long long pairs = static_cast<long long>(data.n) * (data.n - 1) / 2;
  if (cfg.batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (cfg.budget < cfg.batch_size) throw ConfigError("budget must be at least batch_size");
  if (cfg.budget > pairs) {
    throw ConfigError("budget exceeds the number of pairs (" + std::to_string(pairs) + ")");
  }
  if (cfg.gamma < 0.0 || cfg.gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  if (cfg.strategy.switch_iter < 0) throw ConfigError("switch_iter must be nonnegative");
  if (!(cfg.strategy.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.solver_max_sweeps < 1) throw ConfigError("solver_max_sweeps must be at least 1");
  if (cfg.solver_restarts < 0) throw ConfigError("solver_restarts must be nonnegative");
  if (!(cfg.mf_beta > 0.0)) throw ConfigError("mf_beta must be positive");
  if (cfg.mf_max_iters < 1) throw ConfigError("mf_max_iters must be at least 1");
  if (!(cfg.mf_tol > 0.0)) throw ConfigError("mf_tol must be positive");
  if (cfg.mf_damping < 0.0 || cfg.mf_damping >= 1.0) throw ConfigError("mf_damping must lie in [0, 1)");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (cfg.reveal_fraction < 0.0 || cfg.reveal_fraction > 1.0) {
    throw ConfigError("reveal_fraction must lie in [0, 1]");
  }
  if (cfg.init == InitKind::kmeans && !data.has_features()) {
    throw ConfigError("kmeans initialization needs a dataset with feature vectors");
  }
  if (static_cast<int>(data.labels.size()) != data.n) {
    throw ConfigError("dataset labels do not match object count");
  }
}

namespace {

void reveal_ground_truth(SimilarityState& state, const Dataset& data,
                         const ExperimentConfig& cfg) {
  const long long pairs = state.num_pairs();
  const long long count = static_cast<long long>(std::floor(cfg.reveal_fraction * pairs));
  if (count <= 0) return;

  std::vector<std::pair<int, int>> all;
  all.reserve(static_cast<std::size_t>(pairs));
  for (int u = 0; u < data.n; ++u) {
    for (int v = u + 1; v < data.n; ++v) all.emplace_back(u, v);
  }
  auto rng = make_rng(cfg.seed, kStreamReveal);
  shuffle_in_place(all, rng);
  for (long long i = 0; i < count; ++i) {
    const auto [u, v] = all[static_cast<std::size_t>(i)];
    const double truth = static_cast<double>(ground_truth_similarity(data.labels, u, v));
    if (cfg.reveal_mark_queried) {
      state.record_answer(u, v, truth);
    } else {
      state.set_prior(u, v, truth);
    }
  }
}

}  // namespace

std::vector<RoundRecord> run_active_cc(const ExperimentConfig& cfg, const Dataset& data) {
  validate_config(cfg, data);
  const Clustering truth(data.labels);

  auto init_rng = make_rng(cfg.dataset_seed, kStreamKmeansInit);
  SimilarityState state = init_similarity(cfg.init, data, cfg.init_kmeans_k, cfg.init_scale, init_rng);
  reveal_ground_truth(state, data, cfg);

  const PairOracle oracle(data.labels, {cfg.gamma, derive_seed(cfg.seed, kStreamOracle)});

  std::vector<RoundRecord> records;
  Clustering current = Clustering::singletons(data.n);
  std::optional<Eigen::MatrixXd> warm_q;
  long long queried = 0;
  int round = 0;

  auto solve = [&](int r) {
    SolverParams sp{cfg.solver_max_sweeps, cfg.solver_restarts,
                    derive_seed(cfg.seed, kStreamSolver, static_cast<std::uint64_t>(r))};
    try {
      return local_search_cc(state, current, sp);
    } catch (const std::exception& e) {
      throw std::runtime_error("round " + std::to_string(r) + ": solver failed: " + e.what());
    }
  };

  while (queried < cfg.budget && state.num_unqueried() > 0) {
    const Clustering c = solve(round);

    MeanFieldParams mp;
    mp.beta = cfg.mf_beta;
    mp.k = c.num_clusters() + 2;
    mp.max_iters = cfg.mf_max_iters;
    mp.tol = cfg.mf_tol;
    mp.damping = cfg.mf_damping;
    mp.rng_seed = derive_seed(cfg.seed, kStreamMeanField, static_cast<std::uint64_t>(round));
    const bool reuse = cfg.mf_warm_start && warm_q && warm_q->rows() == data.n &&
                       warm_q->cols() == mp.k;
    const MeanFieldPosterior posterior =
        mean_field(state, mp, reuse ? warm_q : std::optional<Eigen::MatrixXd>{});
    if (cfg.mf_warm_start) warm_q = posterior.q;

    const int batch_budget =
        static_cast<int>(std::min<long long>(cfg.batch_size, cfg.budget - queried));
    auto strategy_rng = make_rng(cfg.seed, kStreamStrategy, static_cast<std::uint64_t>(round));
    const auto batch =
        select_batch(cfg.strategy, round, state, c, posterior.q, batch_budget, strategy_rng);

    records.push_back({round, queried, adjusted_rand_index(c, truth), c.num_clusters(),
                       mc_cost(c, state), batch});

    for (const auto& [u, v] : batch) {
      try {
        state.record_answer(u, v, oracle.query(u, v));
      } catch (const std::exception& e) {
        throw std::runtime_error("round " + std::to_string(round) + ": pair (" +
                                 std::to_string(u) + "," + std::to_string(v) +
                                 "): " + e.what());
      }
    }
    queried += static_cast<long long>(batch.size());
    current = c;
    ++round;
  }

  const Clustering final_c = solve(round);
  records.push_back({round, queried, adjusted_rand_index(final_c, truth), final_c.num_clusters(),
                     mc_cost(final_c, state), {}});
  return records;
}

std::vector<RoundRecord> run_active_cc(const ExperimentConfig& cfg) {
  return run_active_cc(cfg, build_dataset(cfg));
}

RepetitionResult run_repetitions(const ExperimentConfig& cfg, const Dataset& data,
                                 const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ConfigError("run_repetitions: need at least one seed");
  RepetitionResult result;
  for (std::uint64_t seed : seeds) {
    RunOutcome outcome;
    outcome.seed = seed;
    ExperimentConfig run_cfg = cfg;
    run_cfg.seed = seed;
    try {
      outcome.records = run_active_cc(run_cfg, data);
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    result.runs.push_back(std::move(outcome));
  }

  std::size_t levels = 0;
  for (const RunOutcome& r : result.runs) {
    if (r.ok) levels = std::max(levels, r.records.size());
  }
  for (std::size_t level = 0; level < levels; ++level) {
    std::vector<double> aris;
    AggregateRow row;
    for (const RunOutcome& r : result.runs) {
      if (!r.ok || r.records.size() <= level) continue;
      if (aris.empty()) {
        row.iter = r.records[level].iter;
        row.queries = r.records[level].queries;
      }
      aris.push_back(r.records[level].ari);
    }
    if (aris.empty()) continue;
    row.runs = static_cast<int>(aris.size());
    double sum = 0.0;
    for (double a : aris) sum += a;
    row.ari_mean = sum / static_cast<double>(aris.size());
    std::sort(aris.begin(), aris.end());
    const std::size_t m = aris.size();
    row.ari_median = m % 2 == 1 ? aris[m / 2] : 0.5 * (aris[m / 2 - 1] + aris[m / 2]);
    if (m > 1) {
      double ss = 0.0;
      for (double a : aris) ss += (a - row.ari_mean) * (a - row.ari_mean);
      row.ari_std = std::sqrt(ss / static_cast<double>(m - 1));
    }
    result.aggregate.push_back(row);
  }
  return result;
}

std::string to_json_line(const RoundRecord& r) {
  nlohmann::ordered_json j;
  j["iter"] = r.iter;
  j["queries"] = r.queries;
  j["ari"] = r.ari;
  j["k"] = r.k;
  j["mc"] = r.mc;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [u, v] : r.batch) arr.push_back({u, v});
  j["batch"] = std::move(arr);
  return j.dump();
}

void write_jsonl(const std::string& path, const std::vector<RoundRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const RoundRecord& r : records) out << to_json_line(r) << '\n';
}

std::string summary_csv(const std::vector<AggregateRow>& rows) {
  std::string out = "iter,queries,ari_mean,ari_median,ari_std\n";
  char buf[160];
  for (const AggregateRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%lld,%.9g,%.9g,%.9g\n", r.iter, r.queries, r.ari_mean,
                  r.ari_median, r.ari_std);
    out += buf;
  }
  return out;
}

void write_summary_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << summary_csv(rows);
}

}  // namespace accc
