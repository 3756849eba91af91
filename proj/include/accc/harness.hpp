#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accc/coverage.hpp"
#include "accc/dataset.hpp"
#include "accc/local_search.hpp"
#include "accc/mean_field.hpp"
#include "accc/oracle.hpp"

namespace accc {

// Invalid configuration (maps to CLI exit code 1, runtime failures to 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntheticSpec {
  int n = 100;
  int k = 10;
  int dim = 16;
  double spread = 1.0;
};

struct ExperimentConfig {
  // dataset
  std::string dataset = "synthetic";  // synthetic | csv
  SyntheticSpec synthetic;
  std::string csv_path;
  std::uint64_t dataset_seed = 12345;  // fixes the dataset and the k-means prior across repetitions

  // similarity initialization
  InitKind init = InitKind::zero;
  double init_scale = 0.01;
  int init_kmeans_k = 0;  // 0 means: number of ground-truth classes

  // noise-free warm start (ablation): fraction of all pairs revealed at init
  double reveal_fraction = 0.0;
  bool reveal_mark_queried = true;

  // query strategy
  StrategyConfig strategy = strategy_from_id("coverage-cost-hard");

  // active loop
  int batch_size = 50;
  long long budget = 2000;

  // oracle
  double gamma = 0.4;

  // solver
  int solver_max_sweeps = 200;
  int solver_restarts = 0;

  // mean field
  double mf_beta = 1.0;
  int mf_max_iters = 100;
  double mf_tol = 1e-6;
  double mf_damping = 0.5;
  bool mf_warm_start = false;

  // run management
  std::uint64_t seed = 1;
  int repetitions = 1;
  std::string output_dir = "out";
};

// One active-loop round: the clustering computed from everything queried so
// far, then the batch sent to the oracle. `queries` counts answers received
// before this round's clustering; the post-final record carries an empty batch.
struct RoundRecord {
  int iter = 0;
  long long queries = 0;
  double ari = 0.0;
  int k = 0;
  double mc = 0.0;
  std::vector<std::pair<int, int>> batch;
};

// Builds the configured dataset (synthetic data is seeded by dataset_seed).
Dataset build_dataset(const ExperimentConfig& cfg);

// Throws ConfigError when the configuration cannot produce a valid run.
void validate_config(const ExperimentConfig& cfg, const Dataset& data);

// Runs the active loop: cluster, fit the posterior, select a batch, query the
// oracle, repeat until the budget is spent or no unqueried pairs remain.
// Returns one record per round plus a final record after the last update.
std::vector<RoundRecord> run_active_cc(const ExperimentConfig& cfg, const Dataset& data);
std::vector<RoundRecord> run_active_cc(const ExperimentConfig& cfg);

struct RunOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<RoundRecord> records;
};

struct AggregateRow {
  int iter = 0;
  long long queries = 0;
  double ari_mean = 0.0;
  double ari_median = 0.0;
  double ari_std = 0.0;
  int runs = 0;
};

struct RepetitionResult {
  std::vector<RunOutcome> runs;
  std::vector<AggregateRow> aggregate;
};

// Independent runs of the same configuration, one per seed. A failed seed is
// reported in its outcome; the remaining runs still aggregate.
RepetitionResult run_repetitions(const ExperimentConfig& cfg, const Dataset& data,
                                 const std::vector<std::uint64_t>& seeds);

// Serialization: one JSON object per line for records, and a CSV with header
// iter,queries,ari_mean,ari_median,ari_std for aggregates.
std::string to_json_line(const RoundRecord& r);
void write_jsonl(const std::string& path, const std::vector<RoundRecord>& records);
std::string summary_csv(const std::vector<AggregateRow>& rows);
void write_summary_csv(const std::string& path, const std::vector<AggregateRow>& rows);

}  // namespace accc
