#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "accc/dataset.hpp"
#include "accc/similarity.hpp"

namespace accc {

struct OracleConfig {
  double gamma = 0.4;  // probability of answering with uniform noise
  std::uint64_t rng_seed = 0;
};

// +1 when the two objects share a class, -1 otherwise.
int ground_truth_similarity(const std::vector<int>& labels, int u, int v);

// Returns the ground truth with probability 1-gamma, otherwise an independent
// uniform draw on [-1, 1].
double noisy_oracle(const std::vector<int>& labels, int u, int v, const OracleConfig& cfg,
                    std::mt19937_64& rng);

// Oracle bound to one experiment run. Answers derive from (seed, u, v), so a
// pair's answer does not depend on when it is asked; pairs are only asked once
// anyway.
class PairOracle {
 public:
  PairOracle(std::vector<int> labels, OracleConfig cfg);
  double query(int u, int v) const;

 private:
  std::vector<int> labels_;
  OracleConfig cfg_;
};

enum class InitKind { zero, kmeans };

// Builds S0: all zeros, or a +/-scale pattern from a k-means clustering of the
// feature vectors (k_init <= 0 uses the number of ground-truth classes). The
// query mask stays all-false either way; priors are not answers and remain
// overwritable.
SimilarityState init_similarity(InitKind kind, const Dataset& data, int k_init, double scale,
                                std::mt19937_64& rng);

}  // namespace accc
