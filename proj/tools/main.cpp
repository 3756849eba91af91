// Command-line front end: run a single experiment, sweep strategies, or run
// one of the scripted ablation protocols. Exit codes: 0 ok, 1 bad
// configuration, 2 runtime failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "accc/config.hpp"
#include "accc/harness.hpp"

namespace fs = std::filesystem;
using namespace accc;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<double> gamma;
  std::optional<int> batch_size;
  std::optional<long long> budget;
};

void apply(const Overrides& o, ExperimentConfig& cfg) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.gamma) cfg.gamma = *o.gamma;
  if (o.batch_size) cfg.batch_size = *o.batch_size;
  if (o.budget) cfg.budget = *o.budget;
}

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed (overrides config)");
  cmd->add_option("--output-dir", o.output_dir, "Output directory (overrides config)");
  cmd->add_option("--gamma", o.gamma, "Oracle noise probability (overrides config)");
  cmd->add_option("--batch-size", o.batch_size, "Pairs queried per round (overrides config)");
  cmd->add_option("--budget", o.budget, "Total query budget (overrides config)");
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
  return seeds;
}

// Runs one configuration into dir and reports whether every seed succeeded.
bool run_into(const ExperimentConfig& cfg, const Dataset& data,
              const std::vector<std::uint64_t>& seeds, const fs::path& dir,
              std::vector<std::pair<std::string, AggregateRow>>* combined,
              const std::string& variant) {
  fs::create_directories(dir);
  RepetitionResult res = run_repetitions(cfg, data, seeds);
  bool all_ok = true;
  for (const RunOutcome& run : res.runs) {
    if (!run.ok) {
      all_ok = false;
      std::cerr << "seed " << run.seed << " failed: " << run.error << "\n";
      continue;
    }
    write_jsonl((dir / ("seed" + std::to_string(run.seed) + ".jsonl")).string(), run.records);
  }
  write_summary_csv((dir / "summary.csv").string(), res.aggregate);
  if (combined) {
    for (const AggregateRow& row : res.aggregate) combined->emplace_back(variant, row);
  }
  return all_ok;
}

void write_combined_csv(const fs::path& path,
                        const std::vector<std::pair<std::string, AggregateRow>>& rows) {
  std::ostringstream out;
  out << "variant,iter,queries,ari_mean,ari_median,ari_std\n";
  char buf[160];
  for (const auto& [variant, r] : rows) {
    std::snprintf(buf, sizeof(buf), ",%d,%lld,%.9g,%.9g,%.9g\n", r.iter, r.queries, r.ari_mean,
                  r.ari_median, r.ari_std);
    out << variant << buf;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << out.str();
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) items.push_back(cur);
  }
  return items;
}

int cmd_run(const std::string& config_path, const Overrides& o) {
  ExperimentConfig cfg = load_config(config_path);
  apply(o, cfg);
  Dataset data = build_dataset(cfg);
  validate_config(cfg, data);
  const bool ok = run_into(cfg, data, seed_range(cfg.seed, cfg.repetitions),
                           fs::path(cfg.output_dir), nullptr, "");
  return ok ? 0 : 2;
}

int cmd_sweep(const std::string& config_path, const Overrides& o, const std::string& strategies,
              int seeds) {
  ExperimentConfig cfg = load_config(config_path);
  apply(o, cfg);
  const std::vector<std::string> ids = split_list(strategies);
  if (ids.empty()) throw ConfigError("sweep: --strategies is empty");
  if (seeds < 1) throw ConfigError("sweep: --seeds must be at least 1");
  for (const std::string& id : ids) strategy_from_id(id);  // validate before any work

  Dataset data = build_dataset(cfg);
  validate_config(cfg, data);
  std::vector<std::pair<std::string, AggregateRow>> combined;
  bool all_ok = true;
  for (const std::string& id : ids) {
    ExperimentConfig variant = cfg;
    const StrategyConfig parsed = strategy_from_id(id);
    variant.strategy.kind = parsed.kind;
    variant.strategy.a_kind = parsed.a_kind;
    variant.strategy.membership_mode = parsed.membership_mode;
    std::cout << "sweep: " << id << "\n";
    all_ok &= run_into(variant, data, seed_range(cfg.seed, seeds),
                       fs::path(cfg.output_dir) / id, &combined, id);
  }
  write_combined_csv(fs::path(cfg.output_dir) / "sweep_summary.csv", combined);
  return all_ok ? 0 : 2;
}

int cmd_ablate(const std::string& protocol, const std::string& config_path, const Overrides& o,
               const std::string& switch_points, const std::string& reveal_fractions,
               bool mark_queried) {
  ExperimentConfig cfg = load_config(config_path);
  apply(o, cfg);
  Dataset data = build_dataset(cfg);
  validate_config(cfg, data);
  const std::vector<std::uint64_t> seeds = seed_range(cfg.seed, cfg.repetitions);
  std::vector<std::pair<std::string, AggregateRow>> combined;
  bool all_ok = true;

  if (protocol == "switch-point") {
    // Coverage with the cost matrix under several hand-over points, plus the
    // pure entropy reference.
    ExperimentConfig ref = cfg;
    ref.strategy = strategy_from_id("entropy");
    ref.strategy.switch_iter = cfg.strategy.switch_iter;
    ref.strategy.epsilon = cfg.strategy.epsilon;
    std::cout << "ablate switch-point: entropy\n";
    all_ok &= run_into(ref, data, seeds, fs::path(cfg.output_dir) / "entropy", &combined, "entropy");
    for (const std::string& token : split_list(switch_points)) {
      ExperimentConfig variant = cfg;
      variant.strategy = strategy_from_id("coverage-cost-hard");
      variant.strategy.epsilon = cfg.strategy.epsilon;
      variant.strategy.switch_iter = std::stoi(token);
      const std::string name = "switch_" + token;
      std::cout << "ablate switch-point: " << name << "\n";
      all_ok &= run_into(variant, data, seeds, fs::path(cfg.output_dir) / name, &combined, name);
    }
  } else if (protocol == "warm-start") {
    // Vary the fraction of ground-truth pairs revealed noise-free at init,
    // for the coverage cost strategy and the entropy baseline.
    for (const std::string& strat : {std::string("coverage-cost-hard"), std::string("entropy")}) {
      for (const std::string& token : split_list(reveal_fractions)) {
        ExperimentConfig variant = cfg;
        const StrategyConfig parsed = strategy_from_id(strat);
        variant.strategy.kind = parsed.kind;
        variant.strategy.a_kind = parsed.a_kind;
        variant.strategy.membership_mode = parsed.membership_mode;
        variant.reveal_fraction = std::stod(token);
        variant.reveal_mark_queried = mark_queried;
        const std::string name = strat + "_reveal_" + token;
        std::cout << "ablate warm-start: " << name << "\n";
        all_ok &= run_into(variant, data, seeds, fs::path(cfg.output_dir) / name, &combined, name);
      }
    }
  } else if (protocol == "soft-vs-hard") {
    // Soft vs hard memberships for the configured informativeness matrix,
    // each under the configured switch point and under never switching.
    ExperimentConfig base = cfg;
    if (base.strategy.kind != StrategyKind::coverage) {
      base.strategy.kind = StrategyKind::coverage;
      base.strategy.a_kind = AKind::cost;
    }
    for (MembershipMode mode : {MembershipMode::hard, MembershipMode::soft}) {
      for (int sp : {cfg.strategy.switch_iter, 1000000000}) {
        ExperimentConfig variant = base;
        variant.strategy.membership_mode = mode;
        variant.strategy.switch_iter = sp;
        const std::string name = std::string(mode == MembershipMode::hard ? "hard" : "soft") +
                                 "_switch_" + (sp == 1000000000 ? "never" : std::to_string(sp));
        std::cout << "ablate soft-vs-hard: " << name << "\n";
        all_ok &= run_into(variant, data, seeds, fs::path(cfg.output_dir) / name, &combined, name);
      }
    }
  } else {
    throw ConfigError("unknown ablation protocol: " + protocol);
  }
  write_combined_csv(fs::path(cfg.output_dir) / "ablate_summary.csv", combined);
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for cold-start active correlation clustering"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "Run a single experiment from a config file");
  run->add_option("--config", config_path, "Experiment config file")->required();
  add_override_flags(run, overrides);

  std::string strategies;
  int sweep_seeds = 5;
  auto* sweep = app.add_subcommand("sweep", "Compare strategies on one dataset");
  sweep->add_option("--config", config_path, "Experiment config file")->required();
  sweep->add_option("--strategies", strategies, "Comma-separated strategy ids")->required();
  sweep->add_option("--seeds", sweep_seeds, "Number of seeds per strategy");
  add_override_flags(sweep, overrides);

  std::string protocol;
  std::string switch_points = "0,5,10,20,40,1000000000";
  std::string reveal_fractions = "0,0.001,0.01";
  bool mark_queried = true;
  auto* ablate = app.add_subcommand("ablate", "Run a scripted ablation protocol");
  ablate->add_option("protocol", protocol, "switch-point | warm-start | soft-vs-hard")->required();
  ablate->add_option("--config", config_path, "Experiment config file")->required();
  ablate->add_option("--switch-points", switch_points, "Switch points for the switch-point protocol");
  ablate->add_option("--reveal-fractions", reveal_fractions,
                     "Revealed ground-truth fractions for the warm-start protocol");
  ablate->add_flag("--warmstart-mark-queried,!--no-warmstart-mark-queried", mark_queried,
                   "Count revealed pairs as already queried (default on)");
  add_override_flags(ablate, overrides);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (sweep->parsed()) return cmd_sweep(config_path, overrides, strategies, sweep_seeds);
    if (ablate->parsed()) {
      return cmd_ablate(protocol, config_path, overrides, switch_points, reveal_fractions,
                        mark_queried);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
