#pragma once

#include <Eigen/Dense>
#include <vector>

namespace accc {

// Signed similarity estimate plus query mask: everything the active loop
// knows about the graph. Entries live in [-1,1] with a zero diagonal; the
// mask marks pairs whose value came from an oracle answer. Answered pairs
// are frozen, so each pair can be queried at most once.
class SimilarityState {
 public:
  explicit SimilarityState(int n);

  int size() const { return n_; }
  double s(int u, int v) const;
  bool queried(int u, int v) const;

  // Writes a prior value without marking the pair queried. Rejects frozen pairs.
  void set_prior(int u, int v, double value);

  // Writes an oracle answer and freezes the pair.
  void record_answer(int u, int v, double value);

  long long num_pairs() const { return static_cast<long long>(n_) * (n_ - 1) / 2; }
  long long num_queried() const { return num_queried_; }
  long long num_unqueried() const { return num_pairs() - num_queried_; }

  const Eigen::MatrixXd& matrix() const { return s_; }

 private:
  void check_pair(int u, int v) const;
  static void check_value(double value);

  int n_ = 0;
  Eigen::MatrixXd s_;
  std::vector<char> f_;
  long long num_queried_ = 0;
};

}  // namespace accc
