#include "accc/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace accc {

SimilarityState::SimilarityState(int n) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("SimilarityState: need at least 2 objects");
  }
  s_ = Eigen::MatrixXd::Zero(n, n);
  f_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

void SimilarityState::check_pair(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw std::out_of_range("SimilarityState: object id out of range");
  }
  if (u == v) {
    throw std::invalid_argument("SimilarityState: diagonal entries are fixed at zero");
  }
}

void SimilarityState::check_value(double value) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
    throw std::invalid_argument("SimilarityState: similarity values must lie in [-1, 1]");
  }
}

double SimilarityState::s(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw std::out_of_range("SimilarityState: object id out of range");
  }
  return s_(u, v);
}

bool SimilarityState::queried(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw std::out_of_range("SimilarityState: object id out of range");
  }
  if (u == v) return false;
  return f_[static_cast<std::size_t>(u) * n_ + v] != 0;
}

void SimilarityState::set_prior(int u, int v, double value) {
  check_pair(u, v);
  check_value(value);
  if (queried(u, v)) {
    throw std::logic_error("SimilarityState: pair already answered, value is frozen");
  }
  s_(u, v) = value;
  s_(v, u) = value;
}

void SimilarityState::record_answer(int u, int v, double value) {
  check_pair(u, v);
  check_value(value);
  if (queried(u, v)) {
    throw std::logic_error("SimilarityState: pair already answered, value is frozen");
  }
  s_(u, v) = value;
  s_(v, u) = value;
  f_[static_cast<std::size_t>(u) * n_ + v] = 1;
  f_[static_cast<std::size_t>(v) * n_ + u] = 1;
  ++num_queried_;
}

}  // namespace accc
