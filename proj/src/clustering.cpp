#include "accc/clustering.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace accc {

Clustering::Clustering(std::vector<int> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("Clustering: label vector is empty");
  }
  labels_.resize(labels.size());
  std::unordered_map<int, int> remap;
  remap.reserve(labels.size());
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], next);
    if (inserted) ++next;
    labels_[i] = it->second;
  }
  k_ = next;
}

Clustering Clustering::singletons(int n) {
  std::vector<int> l(static_cast<std::size_t>(n));
  std::iota(l.begin(), l.end(), 0);
  return Clustering(std::move(l));
}

Clustering Clustering::single_cluster(int n) {
  return Clustering(std::vector<int>(static_cast<std::size_t>(n), 0));
}

int Clustering::label(int u) const {
  if (u < 0 || u >= size()) {
    throw std::out_of_range("Clustering: object id out of range");
  }
  return labels_[static_cast<std::size_t>(u)];
}

std::vector<int> Clustering::cluster_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

}  // namespace accc
