#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "accc/clustering.hpp"
#include "accc/similarity.hpp"

namespace accc {

// A block of the pair set induced by a clustering: (a,a) holds the pairs
// inside cluster a, (a,b) with a < b the pairs between clusters a and b.
struct Region {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const Region&, const Region&) = default;
};

enum class MembershipMode { soft, hard };

// N x K cluster-membership weights: rows sum to 1. Hard rows are one-hot
// indicators of the current clustering; soft rows come from the mean-field
// posterior.
struct MembershipMatrix {
  Eigen::MatrixXd u;
  MembershipMode mode = MembershipMode::hard;
};

struct RegionStats {
  Region region;
  double size = 0.0;        // membership-weighted pair count
  double mass = 0.0;        // membership-weighted informativeness
  double score = 0.0;       // mass / max(size, epsilon)
  double proportion = 0.0;  // share of the batch aimed at this region
  int allocation = 0;       // integer batch allocation
  long long capacity = 0;   // unqueried pairs available in the region
};
using RegionPlan = std::vector<RegionStats>;  // lexicographic by (a,b)

enum class StrategyKind { coverage, entropy, uniform, unient };
enum class AKind { entropy, cost, freq, mu };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::coverage;
  AKind a_kind = AKind::cost;                             // coverage only
  MembershipMode membership_mode = MembershipMode::hard;  // coverage only
  int switch_iter = 20;  // iteration at which coverage/unient hands over to entropy
  double epsilon = 1e-9;
  std::uint64_t rng_seed = 0;
};

// Identifier strings used in configs and on the CLI:
// coverage-{entropy,cost,freq,mu}-{hard,soft}, entropy, uniform, unient.
StrategyConfig strategy_from_id(const std::string& id);
std::string strategy_id(const StrategyConfig& cfg);
std::vector<std::string> all_strategy_ids();

MembershipMatrix membership_hard(const Clustering& c);

// Membership-weighted pair counts per region, via the column sums and the
// Gram matrix of u. With one-hot rows these equal the plain within- and
// between-cluster pair counts.
std::map<Region, double> region_sizes(const MembershipMatrix& u);

// Membership-weighted total of a symmetric nonnegative per-pair score matrix,
// per region, via u^T A u.
std::map<Region, double> informativeness_mass(const MembershipMatrix& u, const Eigen::MatrixXd& a);

// Size-normalized informativeness turned into a distribution over regions.
// When every region scores zero the distribution falls back to uniform over
// regions with remaining capacity (over all regions when caps is null).
std::map<Region, double> region_proportions(const std::map<Region, double>& sizes,
                                            const std::map<Region, double>& masses, double epsilon,
                                            const std::map<Region, long long>* caps = nullptr);

// Per-pair informativeness matrices. entropy needs the mean-field posterior q;
// cost scores |S_uv| on pairs violating c; freq marks unqueried pairs; mu
// scores closeness of the estimate to zero.
Eigen::MatrixXd build_A(AKind kind, const SimilarityState& s, const Eigen::MatrixXd* q,
                        const Clustering& c);

// Largest-remainder apportionment of `batch` units across regions, clipped to
// per-region capacities; clipped excess is re-allocated among the unsaturated
// regions by the same rule. Fractional-remainder ties break lexicographically.
std::map<Region, int> allocate_budget(const std::map<Region, double>& pi, int batch,
                                      const std::map<Region, long long>& caps);

// Samples `take` pairs without replacement with probability proportional to
// score, via the Gumbel top-k trick. take == pairs.size() returns everything.
std::vector<std::pair<int, int>> sample_within_region(const std::vector<std::pair<int, int>>& pairs,
                                                      const std::vector<double>& scores, int take,
                                                      std::mt19937_64& rng);

// Region bookkeeping for one coverage round: sizes, masses, proportions,
// integer allocations and capacities, in lexicographic region order. With an
// rng, structurally tied proportions are served in seeded order before the
// integer allocation, as select_batch does; without one the allocation is the
// plain deterministic pipeline.
RegionPlan coverage_plan(const StrategyConfig& cfg, const SimilarityState& s, const Clustering& c,
                         const Eigen::MatrixXd& q, int batch, std::mt19937_64* rng = nullptr);

// Picks the next batch of unqueried pairs (canonical u < v, sorted). Coverage
// runs the region pipeline until switch_iter, then hands over to the global
// Gumbel-perturbed entropy rule; unient plays uniform until switch_iter.
std::vector<std::pair<int, int>> select_batch(const StrategyConfig& cfg, int iter,
                                              const SimilarityState& s, const Clustering& c,
                                              const Eigen::MatrixXd& q, int batch,
                                              std::mt19937_64& rng);

}  // namespace accc
