#include "accc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace accc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

long long parse_int(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const long long out = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') fail(line, "expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') fail(line, "expected an unsigned integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') fail(line, "expected a number, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "expected true or false, got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

    if (key == "dataset") {
      if (value != "synthetic" && value != "csv") fail(line_no, "dataset must be synthetic or csv");
      cfg.dataset = value;
    } else if (key == "csv_path") {
      cfg.csv_path = value;
    } else if (key == "synthetic_n") {
      cfg.synthetic.n = static_cast<int>(parse_int(value, line_no));
    } else if (key == "synthetic_k") {
      cfg.synthetic.k = static_cast<int>(parse_int(value, line_no));
    } else if (key == "synthetic_dim") {
      cfg.synthetic.dim = static_cast<int>(parse_int(value, line_no));
    } else if (key == "synthetic_spread") {
      cfg.synthetic.spread = parse_real(value, line_no);
    } else if (key == "dataset_seed") {
      cfg.dataset_seed = parse_uint(value, line_no);
    } else if (key == "init") {
      if (value == "zero") cfg.init = InitKind::zero;
      else if (value == "kmeans") cfg.init = InitKind::kmeans;
      else fail(line_no, "init must be zero or kmeans");
    } else if (key == "init_scale") {
      cfg.init_scale = parse_real(value, line_no);
    } else if (key == "init_kmeans_k") {
      cfg.init_kmeans_k = static_cast<int>(parse_int(value, line_no));
    } else if (key == "reveal_fraction") {
      cfg.reveal_fraction = parse_real(value, line_no);
    } else if (key == "reveal_mark_queried") {
      cfg.reveal_mark_queried = parse_bool(value, line_no);
    } else if (key == "strategy") {
      const int keep_switch = cfg.strategy.switch_iter;
      const double keep_eps = cfg.strategy.epsilon;
      try {
        cfg.strategy = strategy_from_id(value);
      } catch (const std::exception& e) {
        fail(line_no, e.what());
      }
      cfg.strategy.switch_iter = keep_switch;
      cfg.strategy.epsilon = keep_eps;
    } else if (key == "switch_iter") {
      cfg.strategy.switch_iter = static_cast<int>(parse_int(value, line_no));
    } else if (key == "epsilon") {
      cfg.strategy.epsilon = parse_real(value, line_no);
    } else if (key == "batch_size") {
      cfg.batch_size = static_cast<int>(parse_int(value, line_no));
    } else if (key == "budget") {
      cfg.budget = parse_int(value, line_no);
    } else if (key == "gamma") {
      cfg.gamma = parse_real(value, line_no);
    } else if (key == "seed") {
      cfg.seed = parse_uint(value, line_no);
    } else if (key == "repetitions") {
      cfg.repetitions = static_cast<int>(parse_int(value, line_no));
    } else if (key == "solver_max_sweeps") {
      cfg.solver_max_sweeps = static_cast<int>(parse_int(value, line_no));
    } else if (key == "solver_restarts") {
      cfg.solver_restarts = static_cast<int>(parse_int(value, line_no));
    } else if (key == "mf_beta") {
      cfg.mf_beta = parse_real(value, line_no);
    } else if (key == "mf_max_iters") {
      cfg.mf_max_iters = static_cast<int>(parse_int(value, line_no));
    } else if (key == "mf_tol") {
      cfg.mf_tol = parse_real(value, line_no);
    } else if (key == "mf_damping") {
      cfg.mf_damping = parse_real(value, line_no);
    } else if (key == "mf_warm_start") {
      cfg.mf_warm_start = parse_bool(value, line_no);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace accc
