#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "accc/clustering.hpp"

namespace accc {

struct Dataset {
  int n = 0;
  std::vector<int> labels;   // ground-truth classes, contiguous ids from 0
  Eigen::MatrixXd features;  // N x D, 0x0 when absent

  bool has_features() const { return features.size() > 0; }
  int num_classes() const;
};

// Balanced class labels plus isotropic Gaussian blobs: one mean per class
// drawn uniformly in a hypercube whose side grows with k, so blobs stay
// separable at spread = 1. spread scales the within-blob deviation.
Dataset synthetic_dataset(int n, int k, int dim, double spread, std::mt19937_64& rng);

// CSV ingestion: one row per object, real features in the leading columns and
// an integer class label last. A non-numeric first row is treated as a header.
// Labels are remapped to 0..C-1 in first-occurrence order. Parse problems
// report the offending line number.
Dataset load_feature_csv(const std::string& path);

// Lloyd's algorithm with k-means++ seeding; empty clusters are re-seeded on
// the point currently farthest from its center.
Clustering kmeans(const Eigen::MatrixXd& features, int k, int max_iters, std::mt19937_64& rng);

}  // namespace accc
