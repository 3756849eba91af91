#include "accc/oracle.hpp"

#include <stdexcept>
#include <utility>

#include "accc/rng.hpp"

namespace accc {

int ground_truth_similarity(const std::vector<int>& labels, int u, int v) {
  const int n = static_cast<int>(labels.size());
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("ground_truth_similarity: object id out of range");
  }
  if (u == v) throw std::invalid_argument("ground_truth_similarity: u and v must be distinct");
  return labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(v)] ? 1 : -1;
}

double noisy_oracle(const std::vector<int>& labels, int u, int v, const OracleConfig& cfg,
                    std::mt19937_64& rng) {
  if (cfg.gamma < 0.0 || cfg.gamma > 1.0) {
    throw std::invalid_argument("noisy_oracle: gamma must lie in [0, 1]");
  }
  const int truth = ground_truth_similarity(labels, u, v);
  const double flip = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (flip < cfg.gamma) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  }
  return static_cast<double>(truth);
}

PairOracle::PairOracle(std::vector<int> labels, OracleConfig cfg)
    : labels_(std::move(labels)), cfg_(cfg) {
  if (cfg_.gamma < 0.0 || cfg_.gamma > 1.0) {
    throw std::invalid_argument("PairOracle: gamma must lie in [0, 1]");
  }
}

double PairOracle::query(int u, int v) const {
  const int a = std::min(u, v);
  const int b = std::max(u, v);
  auto rng = make_rng(cfg_.rng_seed, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  return noisy_oracle(labels_, a, b, cfg_, rng);
}

SimilarityState init_similarity(InitKind kind, const Dataset& data, int k_init, double scale,
                                std::mt19937_64& rng) {
  SimilarityState state(data.n);
  if (kind == InitKind::zero) return state;

  if (!data.has_features()) {
    throw std::invalid_argument("init_similarity: k-means initialization needs feature vectors");
  }
  if (!(scale >= 0.0 && scale <= 1.0)) {
    throw std::invalid_argument("init_similarity: scale must lie in [0, 1]");
  }
  const int k = k_init > 0 ? k_init : data.num_classes();
  Clustering c = kmeans(data.features, k, 100, rng);
  for (int u = 0; u < data.n; ++u) {
    for (int v = u + 1; v < data.n; ++v) {
      state.set_prior(u, v, c.label(u) == c.label(v) ? scale : -scale);
    }
  }
  return state;
}

}  // namespace accc
