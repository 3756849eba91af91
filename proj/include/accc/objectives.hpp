#pragma once

#include "accc/clustering.hpp"
#include "accc/similarity.hpp"

namespace accc {

// True iff the pair disagrees with the clustering: within-cluster with
// negative similarity, or between clusters with nonnegative similarity
// (S_uv = 0 counts as similar, so it violates when split).
bool violates(int u, int v, const Clustering& c, const SimilarityState& s);

// Sum of |S_uv| over violating pairs.
double cc_cost(const Clustering& c, const SimilarityState& s);

// Negative sum of within-cluster similarities. Shares its minimizers with
// cc_cost; the two differ by a constant that does not depend on the
// clustering.
double mc_cost(const Clustering& c, const SimilarityState& s);

}  // namespace accc
