#include "accc/ari.hpp"

#include <stdexcept>
#include <vector>

namespace accc {

namespace {
long long comb2(long long x) { return x * (x - 1) / 2; }
}  // namespace

double adjusted_rand_index(const Clustering& c1, const Clustering& c2) {
  if (c1.size() != c2.size() || c1.size() == 0) {
    throw std::invalid_argument("adjusted_rand_index: clusterings must have equal nonzero size");
  }
  const int n = c1.size();
  const int k1 = c1.num_clusters();
  const int k2 = c2.num_clusters();

  std::vector<std::vector<long long>> cnt(static_cast<std::size_t>(k1),
                                          std::vector<long long>(static_cast<std::size_t>(k2), 0));
  for (int i = 0; i < n; ++i) {
    ++cnt[static_cast<std::size_t>(c1.label(i))][static_cast<std::size_t>(c2.label(i))];
  }

  long long sum_cells = 0;
  std::vector<long long> rows(static_cast<std::size_t>(k1), 0);
  std::vector<long long> cols(static_cast<std::size_t>(k2), 0);
  for (int i = 0; i < k1; ++i) {
    for (int j = 0; j < k2; ++j) {
      const long long c = cnt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      sum_cells += comb2(c);
      rows[static_cast<std::size_t>(i)] += c;
      cols[static_cast<std::size_t>(j)] += c;
    }
  }
  long long sum_rows = 0;
  long long sum_cols = 0;
  for (long long r : rows) sum_rows += comb2(r);
  for (long long c : cols) sum_cols += comb2(c);

  const double total = static_cast<double>(comb2(n));
  const double expected = static_cast<double>(sum_rows) * static_cast<double>(sum_cols) / total;
  const double max_index = 0.5 * static_cast<double>(sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (static_cast<double>(sum_cells) - expected) / denom;
}

}  // namespace accc
