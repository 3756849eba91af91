#pragma once

#include "accc/clustering.hpp"

namespace accc {

// Adjusted Rand index from the contingency table. Returns 1 when the
// chance-corrected denominator vanishes, which happens exactly when both
// partitions are all singletons or both are a single cluster.
double adjusted_rand_index(const Clustering& c1, const Clustering& c2);

}  // namespace accc
