#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "accc/mean_field.hpp"
#include "support/brute_force.hpp"

using namespace accc;
namespace ts = accc::test_support;

namespace {

Eigen::MatrixXd softmax_rows_ref(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::ArrayXd row = (x.row(i).array() - x.row(i).maxCoeff()).exp();
    out.row(i) = (row / row.sum()).matrix();
  }
  return out;
}

}  // namespace

TEST_CASE("entropy_score values") {
  CHECK(entropy_score(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(entropy_score(0.0) <= 1e-10);
  CHECK(entropy_score(1.0) <= 1e-10);
  CHECK(entropy_score(0.25) == doctest::Approx(0.562335).epsilon(1e-5));
  CHECK_THROWS_AS(entropy_score(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(entropy_score(1.1), std::invalid_argument);
}

TEST_CASE("same_cluster_prob") {
  Eigen::MatrixXd q(3, 2);
  q << 1, 0,
       1, 0,
       0.5, 0.5;
  CHECK(same_cluster_prob(q, 0, 1) == doctest::Approx(1.0));
  CHECK(same_cluster_prob(q, 0, 2) == doctest::Approx(0.5));
  Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(4, 5, 0.2);
  CHECK(same_cluster_prob(uniform, 1, 3) == doctest::Approx(0.2));
  CHECK_THROWS_AS(same_cluster_prob(q, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(same_cluster_prob(q, 0, 9), std::out_of_range);
}

TEST_CASE("entropy_matrix basics") {
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(4, 3);
  for (int i = 0; i < 4; ++i) onehot(i, 1) = 1.0;
  Eigen::MatrixXd h = entropy_matrix(onehot);
  CHECK(h.diagonal().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(h.cwiseAbs().maxCoeff() <= 1e-10);  // consistent one-hot rows: p = 1 everywhere

  Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(5, 2, 0.5);
  Eigen::MatrixXd hu = entropy_matrix(uniform);
  for (int u = 0; u < 5; ++u) {
    for (int v = 0; v < 5; ++v) {
      if (u != v) CHECK(hu(u, v) == doctest::Approx(std::log(2.0)));
    }
  }
  CHECK((hu - hu.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("entropy_matrix is bounded and column-permutation invariant") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd q(6, 4);
  for (int i = 0; i < 6; ++i) {
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      q(i, j) = -std::log(std::max(unif(rng), 1e-12));
      sum += q(i, j);
    }
    q.row(i) /= sum;
  }
  Eigen::MatrixXd h = entropy_matrix(q);
  CHECK(h.minCoeff() >= 0.0);
  CHECK(h.maxCoeff() <= std::log(2.0) + 1e-12);

  Eigen::MatrixXd permuted(6, 4);
  const int perm[4] = {2, 0, 3, 1};
  for (int j = 0; j < 4; ++j) permuted.col(perm[j]) = q.col(j);
  CHECK((entropy_matrix(permuted) - h).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("zero similarities drive q to uniform") {
  SimilarityState s(6);
  MeanFieldParams p;
  p.k = 3;
  p.tol = 1e-11;
  p.max_iters = 300;
  MeanFieldPosterior post = mean_field(s, p);
  CHECK(post.converged);
  CHECK((post.q.array() - 1.0 / 3.0).abs().maxCoeff() <= 1e-9);
  CHECK(post.m.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("rows of q always sum to one") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    SimilarityState s = ts::random_similarity(8, rng);
    MeanFieldParams p;
    p.k = 4;
    p.rng_seed = rng();
    MeanFieldPosterior post = mean_field(s, p);
    for (int i = 0; i < 8; ++i) {
      CHECK(post.q.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(post.q.row(i).minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("fixed-point residual is small at convergence") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    SimilarityState s = ts::random_similarity(7, rng);
    MeanFieldParams p;
    p.k = 3;
    p.beta = 2.0;
    p.max_iters = 500;
    p.rng_seed = rng();
    MeanFieldPosterior post = mean_field(s, p);
    if (!post.converged) continue;
    Eigen::MatrixXd update = softmax_rows_ref(-p.beta * (-(s.matrix() * post.q)));
    CHECK((update - post.q).cwiseAbs().maxCoeff() <= 10.0 * p.tol);
  }
}

TEST_CASE("two ideal blocks: argmax separates them and marginals match exact Gibbs") {
  SimilarityState s = ts::block_similarity({3, 3});
  MeanFieldParams p;
  p.k = 2;
  p.beta = 5.0;
  p.max_iters = 500;
  p.rng_seed = 4;
  MeanFieldPosterior post = mean_field(s, p);

  // Row-wise argmax groups the blocks, up to column naming.
  std::vector<int> argmax(6);
  for (int i = 0; i < 6; ++i) {
    Eigen::Index j;
    post.q.row(i).maxCoeff(&j);
    argmax[static_cast<std::size_t>(i)] = static_cast<int>(j);
  }
  CHECK(argmax[0] == argmax[1]);
  CHECK(argmax[1] == argmax[2]);
  CHECK(argmax[3] == argmax[4]);
  CHECK(argmax[4] == argmax[5]);
  CHECK(argmax[0] != argmax[3]);

  Eigen::MatrixXd exact = ts::exact_gibbs_same_cluster(s, p.beta);
  double worst = 0.0;
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      worst = std::max(worst, std::abs(same_cluster_prob(post.q, u, v) - exact(u, v)));
    }
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("mean_field is deterministic given the seed") {
  std::mt19937_64 rng(41);
  SimilarityState s = ts::random_similarity(9, rng);
  MeanFieldParams p;
  p.k = 4;
  p.rng_seed = 77;
  MeanFieldPosterior a = mean_field(s, p);
  MeanFieldPosterior b = mean_field(s, p);
  CHECK((a.q - b.q).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.iters_used == b.iters_used);
}

TEST_CASE("parameter validation") {
  SimilarityState s(3);
  MeanFieldParams p;
  p.beta = 0.0;
  CHECK_THROWS_AS(mean_field(s, p), std::invalid_argument);
  p = {};
  p.k = 1;
  CHECK_THROWS_AS(mean_field(s, p), std::invalid_argument);
  p = {};
  p.damping = 1.0;
  CHECK_THROWS_AS(mean_field(s, p), std::invalid_argument);
  p = {};
  Eigen::MatrixXd wrong = Eigen::MatrixXd::Constant(2, 2, 0.5);
  CHECK_THROWS_AS(mean_field(s, p, wrong), std::invalid_argument);
}
