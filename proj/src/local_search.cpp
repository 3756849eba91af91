#include "accc/local_search.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "accc/objectives.hpp"
#include "accc/rng.hpp"

namespace accc {

Eigen::MatrixXd assignment_costs(const SimilarityState& s, const Clustering& c) {
  if (c.size() != s.size()) {
    throw std::invalid_argument("assignment_costs: clustering does not match similarity state");
  }
  const int n = s.size();
  const int k = c.num_clusters();
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, k);
  for (int v = 0; v < n; ++v) onehot(v, c.label(v)) = 1.0;
  // The diagonal of S is zero, so each object's own term vanishes.
  return -(s.matrix() * onehot);
}

namespace {

struct DescentResult {
  std::vector<int> labels;
  double cost = 0.0;
  int sweeps = 0;
  long long moves = 0;
};

// Merges the cluster pair with the most negative merge delta, if any. The
// delta of merging a and b is minus their total cross similarity; merging
// only ever happens on strict improvement. Returns false when no merge helps.
// Single-object relocation cannot rejoin a cluster that split into halves,
// so the descent interleaves this pass with the move sweeps.
bool merge_best_pair(const Eigen::MatrixXd& sim, std::vector<int>& labels,
                     std::vector<long long>& cluster_size, int& k, double& cost) {
  if (k < 2) return false;
  const int n = static_cast<int>(labels.size());
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, k);
  for (int v = 0; v < n; ++v) onehot(v, labels[static_cast<std::size_t>(v)]) = 1.0;
  Eigen::MatrixXd cross = onehot.transpose() * sim * onehot;

  int best_a = -1;
  int best_b = -1;
  double best_delta = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const double delta = -cross(a, b);
      if (delta < best_delta) {
        best_delta = delta;
        best_a = a;
        best_b = b;
      }
    }
  }
  if (best_a < 0) return false;

  for (int v = 0; v < n; ++v) {
    if (labels[static_cast<std::size_t>(v)] == best_b) labels[static_cast<std::size_t>(v)] = best_a;
  }
  cluster_size[static_cast<std::size_t>(best_a)] += cluster_size[static_cast<std::size_t>(best_b)];
  const int last = k - 1;
  if (best_b != last) {
    for (int v = 0; v < n; ++v) {
      if (labels[static_cast<std::size_t>(v)] == last) labels[static_cast<std::size_t>(v)] = best_b;
    }
    cluster_size[static_cast<std::size_t>(best_b)] = cluster_size[static_cast<std::size_t>(last)];
  }
  cluster_size.pop_back();
  --k;
  cost += best_delta;
  return true;
}

// One monotone descent from the given compact labeling. Every accepted move
// strictly decreases the objective, so the loop terminates.
DescentResult descend(const SimilarityState& s, std::vector<int> labels, int num_clusters,
                      const SolverParams& params, std::uint64_t order_seed,
                      std::vector<double>* trace) {
  const int n = s.size();
  const auto& sim = s.matrix();

  std::vector<long long> cluster_size(static_cast<std::size_t>(num_clusters), 0);
  for (int l : labels) ++cluster_size[static_cast<std::size_t>(l)];

  double cost = mc_cost(Clustering(labels), s);
  DescentResult out;

  std::mt19937_64 rng(order_seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> move_cost;
  int k = num_clusters;
  for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
    ++out.sweeps;
    shuffle_in_place(order, rng);
    bool moved_any = false;
    for (int u : order) {
      move_cost.assign(static_cast<std::size_t>(k), 0.0);
      for (int v = 0; v < n; ++v) {
        if (v != u) move_cost[static_cast<std::size_t>(labels[v])] -= sim(u, v);
      }
      const int cur = labels[u];
      const double cur_cost = move_cost[static_cast<std::size_t>(cur)];

      int best_existing = 0;
      for (int j = 1; j < k; ++j) {
        if (move_cost[static_cast<std::size_t>(j)] < move_cost[static_cast<std::size_t>(best_existing)]) {
          best_existing = j;
        }
      }
      const double best_existing_cost = move_cost[static_cast<std::size_t>(best_existing)];
      const double best_option = std::min(best_existing_cost, 0.0);
      if (cur_cost <= best_option) continue;  // keep the current cluster on ties

      int dest;
      if (best_existing_cost <= 0.0) {
        dest = best_existing;  // a fresh singleton must be strictly better to win
      } else {
        dest = k;
        move_cost.push_back(0.0);
        cluster_size.push_back(0);
        ++k;
      }

      cost += move_cost[static_cast<std::size_t>(dest)] - cur_cost;
      labels[u] = dest;
      --cluster_size[static_cast<std::size_t>(cur)];
      ++cluster_size[static_cast<std::size_t>(dest)];
      ++out.moves;
      moved_any = true;
      if (trace) trace->push_back(cost);

      if (cluster_size[static_cast<std::size_t>(cur)] == 0) {
        const int last = k - 1;
        if (cur != last) {
          for (int v = 0; v < n; ++v) {
            if (labels[v] == last) labels[v] = cur;
          }
          cluster_size[static_cast<std::size_t>(cur)] = cluster_size[static_cast<std::size_t>(last)];
        }
        cluster_size.pop_back();
        --k;
      }
    }
    if (!moved_any) {
      if (!merge_best_pair(sim, labels, cluster_size, k, cost)) break;
      ++out.moves;
      if (trace) trace->push_back(cost);
    }
  }

  out.labels = std::move(labels);
  out.cost = cost;
  return out;
}

std::vector<int> random_partition(int n, std::mt19937_64& rng) {
  const int k = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = pick(rng);
  return labels;
}

}  // namespace

Clustering local_search_cc(const SimilarityState& s, const std::optional<Clustering>& init,
                           const SolverParams& params, SolverStats* stats) {
  if (params.max_sweeps < 1) {
    throw std::invalid_argument("local_search_cc: max_sweeps must be at least 1");
  }
  if (params.restarts < 0) {
    throw std::invalid_argument("local_search_cc: restarts must be nonnegative");
  }
  const int n = s.size();
  if (init && init->size() != n) {
    throw std::invalid_argument("local_search_cc: initialization does not match similarity state");
  }

  Clustering start = init ? *init : Clustering::singletons(n);

  std::vector<double> primary_trace;
  DescentResult best = descend(s, start.labels(), start.num_clusters(), params,
                               derive_seed(params.rng_seed, 0, 0), stats ? &primary_trace : nullptr);
  best.cost = mc_cost(Clustering(best.labels), s);
  SolverStats best_stats{best.sweeps, best.moves, std::move(primary_trace)};

  for (int r = 1; r <= params.restarts; ++r) {
    auto init_rng = make_rng(params.rng_seed, static_cast<std::uint64_t>(r), 1);
    std::vector<int> labels = random_partition(n, init_rng);
    Clustering rc(labels);
    std::vector<double> trace;
    DescentResult cand = descend(s, rc.labels(), rc.num_clusters(), params,
                                 derive_seed(params.rng_seed, static_cast<std::uint64_t>(r), 2),
                                 stats ? &trace : nullptr);
    cand.cost = mc_cost(Clustering(cand.labels), s);
    if (cand.cost < best.cost) {
      best = std::move(cand);
      best_stats = SolverStats{best.sweeps, best.moves, std::move(trace)};
    }
  }

  if (stats) *stats = std::move(best_stats);
  return Clustering(best.labels);
}

}  // namespace accc
