#include "accc/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace accc {

namespace {

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& x) {
  Eigen::VectorXd rowmax = x.rowwise().maxCoeff();
  Eigen::MatrixXd e = (x.colwise() - rowmax).array().exp().matrix();
  Eigen::VectorXd z = e.rowwise().sum();
  return (e.array().colwise() / z.array()).matrix();
}

void check_params(const MeanFieldParams& p) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("mean_field: beta must be positive");
  if (p.k < 2) throw std::invalid_argument("mean_field: k must be at least 2");
  if (p.max_iters < 1) throw std::invalid_argument("mean_field: max_iters must be at least 1");
  if (!(p.tol > 0.0)) throw std::invalid_argument("mean_field: tol must be positive");
  if (p.damping < 0.0 || p.damping >= 1.0) {
    throw std::invalid_argument("mean_field: damping must lie in [0, 1)");
  }
}

}  // namespace

MeanFieldPosterior mean_field(const SimilarityState& s, const MeanFieldParams& params,
                              const std::optional<Eigen::MatrixXd>& q_init) {
  check_params(params);
  if (!s.matrix().allFinite()) {
    throw std::invalid_argument("mean_field: similarity matrix has non-finite entries");
  }
  const int n = s.size();
  const int k = params.k;
  const auto& sim = s.matrix();

  Eigen::MatrixXd q;
  if (q_init) {
    if (q_init->rows() != n || q_init->cols() != k) {
      throw std::invalid_argument("mean_field: q_init shape does not match (n, k)");
    }
    q = *q_init;
  } else {
    std::mt19937_64 rng(params.rng_seed);
    std::uniform_real_distribution<double> small(-0.01, 0.01);
    Eigen::MatrixXd m0(n, k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) m0(i, j) = small(rng);
    }
    q = softmax_rows(-params.beta * m0);
  }

  MeanFieldPosterior out;
  Eigen::MatrixXd m = -(sim * q);
  for (int iter = 1; iter <= params.max_iters; ++iter) {
    Eigen::MatrixXd update = softmax_rows(-params.beta * m);
    const double residual = (update - q).cwiseAbs().maxCoeff();
    out.iters_used = iter;
    if (residual <= params.tol) {
      out.converged = true;
      break;
    }
    q = (1.0 - params.damping) * update + params.damping * q;
    m = -(sim * q);
  }

  out.q = std::move(q);
  out.m = std::move(m);
  return out;
}

double same_cluster_prob(const Eigen::MatrixXd& q, int u, int v) {
  if (u < 0 || u >= q.rows() || v < 0 || v >= q.rows()) {
    throw std::out_of_range("same_cluster_prob: object id out of range");
  }
  if (u == v) {
    throw std::invalid_argument("same_cluster_prob: u and v must be distinct");
  }
  const double p = q.row(u).dot(q.row(v));
  return std::clamp(p, 0.0, 1.0);
}

double entropy_score(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("entropy_score: p must lie in [0, 1]");
  }
  const double lo = 1e-12;
  p = std::clamp(p, lo, 1.0 - lo);
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

Eigen::MatrixXd entropy_matrix(const Eigen::MatrixXd& q) {
  const auto n = q.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rowsum = q.row(i).sum();
    if (std::abs(rowsum - 1.0) > 1e-6 || q.row(i).minCoeff() < -1e-9) {
      throw std::invalid_argument("entropy_matrix: q rows must be nonnegative and sum to 1");
    }
  }
  Eigen::MatrixXd p = q * q.transpose();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = u + 1; v < n; ++v) {
      const double e = entropy_score(std::clamp(p(u, v), 0.0, 1.0));
      h(u, v) = e;
      h(v, u) = e;
    }
  }
  return h;
}

}  // namespace accc
