#pragma once

#include <vector>

namespace accc {

// A partition of N objects encoded as per-object cluster labels. Labels are
// canonicalized on construction (first-occurrence order yields ids 0,1,2,...),
// so two encodings of the same partition compare equal and no id is empty.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(std::vector<int> labels);

  static Clustering singletons(int n);
  static Clustering single_cluster(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  int num_clusters() const { return k_; }
  int label(int u) const;
  const std::vector<int>& labels() const { return labels_; }
  std::vector<int> cluster_sizes() const;

  bool operator==(const Clustering& other) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

}  // namespace accc
