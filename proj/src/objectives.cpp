#include "accc/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace accc {

namespace {

void check_match(const Clustering& c, const SimilarityState& s) {
  if (c.size() != s.size()) {
    throw std::invalid_argument("clustering and similarity state have different sizes");
  }
}

}  // namespace

bool violates(int u, int v, const Clustering& c, const SimilarityState& s) {
  check_match(c, s);
  if (u == v) {
    throw std::invalid_argument("violates: u and v must be distinct");
  }
  const double suv = s.s(u, v);
  if (c.label(u) == c.label(v)) return suv < 0.0;
  return suv >= 0.0;
}

double cc_cost(const Clustering& c, const SimilarityState& s) {
  check_match(c, s);
  const int n = s.size();
  const auto& m = s.matrix();
  double cost = 0.0;
  for (int u = 0; u < n; ++u) {
    const int lu = c.label(u);
    for (int v = u + 1; v < n; ++v) {
      const double suv = m(u, v);
      const bool same = lu == c.label(v);
      if (same ? suv < 0.0 : suv >= 0.0) cost += std::abs(suv);
    }
  }
  return cost;
}

double mc_cost(const Clustering& c, const SimilarityState& s) {
  check_match(c, s);
  const int n = s.size();
  const auto& m = s.matrix();
  double cost = 0.0;
  for (int u = 0; u < n; ++u) {
    const int lu = c.label(u);
    for (int v = u + 1; v < n; ++v) {
      if (lu == c.label(v)) cost -= m(u, v);
    }
  }
  return cost;
}

}  // namespace accc
