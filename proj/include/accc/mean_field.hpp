#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "accc/similarity.hpp"

namespace accc {

struct MeanFieldParams {
  double beta = 1.0;   // Gibbs concentration
  int k = 2;           // number of posterior components (columns of q)
  int max_iters = 100;
  double tol = 1e-6;   // threshold on the fixed-point residual max|softmax(beta*S*q) - q|
  double damping = 0.5;  // q <- (1-damping)*update + damping*q
  std::uint64_t rng_seed = 0;
};

struct MeanFieldPosterior {
  Eigen::MatrixXd q;  // N x K, rows nonnegative and summing to 1
  Eigen::MatrixXd m;  // N x K assignment costs, m = -S*q for the returned q
  bool converged = false;
  int iters_used = 0;
};

// Factorial fit of the Gibbs distribution over clusterings: alternates
// q = softmax_rows(-beta*m) and m = -S*q from a small random m, damping the
// q update. Stops when the undamped update agrees with q entrywise within
// tol, or after max_iters. Passing q_init (same shape) skips the random
// initialization and resumes from a previous posterior.
MeanFieldPosterior mean_field(const SimilarityState& s, const MeanFieldParams& params,
                              const std::optional<Eigen::MatrixXd>& q_init = std::nullopt);

// Probability that u and v share a cluster under the factorial posterior:
// the dot product of rows u and v, clamped to [0,1].
double same_cluster_prob(const Eigen::MatrixXd& q, int u, int v);

// Binary entropy in nats; p is clamped to [1e-12, 1-1e-12] before evaluation.
double entropy_score(double p);

// Pairwise same-cluster entropies; symmetric with a zero diagonal.
Eigen::MatrixXd entropy_matrix(const Eigen::MatrixXd& q);

}  // namespace accc
