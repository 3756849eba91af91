#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "accc/clustering.hpp"
#include "accc/similarity.hpp"

namespace accc {

struct SolverParams {
  int max_sweeps = 200;
  int restarts = 0;  // extra random starts on top of the given initialization
  std::uint64_t rng_seed = 0;
};

// Optional per-run diagnostics for the run that produced the returned
// clustering.
struct SolverStats {
  int sweeps = 0;
  long long moves = 0;
  std::vector<double> cost_trace;  // objective value after each accepted move
};

// Cost of placing each object into each existing cluster: entry (u,k) is
// minus the summed similarity from u to the current members of cluster k
// (u itself excluded).
Eigen::MatrixXd assignment_costs(const SimilarityState& s, const Clustering& c);

// Local search on the negative within-cluster similarity objective. Objects
// are visited in a seeded random order; each moves to its cheapest cluster,
// with a fresh singleton allowed only when strictly cheaper than every
// existing cluster, and the current cluster kept on ties. Once a sweep makes
// no move, strictly improving whole-cluster merges are applied before giving
// up. Emptied clusters are dropped, so the number of clusters is discovered
// rather than prescribed. Without an initialization the search starts from
// all singletons.
Clustering local_search_cc(const SimilarityState& s, const std::optional<Clustering>& init,
                           const SolverParams& params, SolverStats* stats = nullptr);

}  // namespace accc
