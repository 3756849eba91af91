#include "accc/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "accc/mean_field.hpp"
#include "accc/objectives.hpp"
#include "accc/rng.hpp"

namespace accc {

namespace {

std::vector<Region> region_list(int k) {
  std::vector<Region> out;
  out.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) out.push_back({a, b});
  }
  return out;
}

void check_membership(const MembershipMatrix& m) {
  if (m.u.rows() < 1 || m.u.cols() < 1) {
    throw std::invalid_argument("membership matrix is empty");
  }
  for (Eigen::Index i = 0; i < m.u.rows(); ++i) {
    if (std::abs(m.u.row(i).sum() - 1.0) > 1e-9 || m.u.row(i).minCoeff() < -1e-12) {
      throw std::invalid_argument("membership rows must be nonnegative and sum to 1");
    }
  }
}

void check_score_matrix(const Eigen::MatrixXd& a, Eigen::Index n) {
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("informativeness matrix has wrong shape");
  }
  for (Eigen::Index u = 0; u < n; ++u) {
    if (std::abs(a(u, u)) > 1e-12) {
      throw std::invalid_argument("informativeness matrix must have a zero diagonal");
    }
    for (Eigen::Index v = u + 1; v < n; ++v) {
      if (std::abs(a(u, v) - a(v, u)) > 1e-12) {
        throw std::invalid_argument("informativeness matrix must be symmetric");
      }
      if (a(u, v) < -1e-12) {
        throw std::invalid_argument("informativeness matrix must be nonnegative");
      }
    }
  }
}

// Hard per-object region index: cluster label in hard mode, argmax posterior
// column in soft mode (first maximum on ties). Soft regions live over the
// posterior's own columns.
std::vector<int> object_region_index(const StrategyConfig& cfg, const Clustering& c,
                                     const Eigen::MatrixXd& q, int* num_indices) {
  const int n = c.size();
  std::vector<int> idx(static_cast<std::size_t>(n));
  if (cfg.membership_mode == MembershipMode::hard) {
    for (int u = 0; u < n; ++u) idx[static_cast<std::size_t>(u)] = c.label(u);
    *num_indices = c.num_clusters();
  } else {
    for (int u = 0; u < n; ++u) {
      Eigen::Index best = 0;
      q.row(u).maxCoeff(&best);
      idx[static_cast<std::size_t>(u)] = static_cast<int>(best);
    }
    *num_indices = static_cast<int>(q.cols());
  }
  return idx;
}

struct CoverageRound {
  RegionPlan plan;
  std::map<Region, std::vector<std::pair<int, int>>> pools;  // unqueried pairs per region
};

// Proportions are often structurally tied (uniform fallback rounds, untouched
// regions under the frequency matrix). Served in index order such ties would
// concentrate whole batches on the lexicographically first regions, so the
// pipeline breaks them with a vanishing seeded jitter instead; untied
// proportions are unaffected at this magnitude.
std::map<Region, double> jitter_proportions(const std::map<Region, double>& pi,
                                            std::mt19937_64& rng) {
  std::map<Region, double> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double total = 0.0;
  for (const auto& [r, p] : pi) {
    const double value = p * (1.0 + 1e-9 * unit(rng));
    out[r] = value;
    total += value;
  }
  if (total > 0.0) {
    for (auto& [r, p] : out) p /= total;
  }
  return out;
}

CoverageRound build_coverage_round(const StrategyConfig& cfg, const SimilarityState& s,
                                   const Clustering& c, const Eigen::MatrixXd& q, int batch,
                                   std::mt19937_64* rng) {
  const int n = s.size();
  MembershipMatrix memb = cfg.membership_mode == MembershipMode::hard
                              ? membership_hard(c)
                              : MembershipMatrix{q, MembershipMode::soft};

  int k_regions = 0;
  std::vector<int> obj_region = object_region_index(cfg, c, q, &k_regions);

  CoverageRound round;
  std::map<Region, long long> caps;
  for (const Region& r : region_list(k_regions)) {
    caps[r] = 0;
    round.pools[r];
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (s.queried(u, v)) continue;
      const int a = std::min(obj_region[u], obj_region[v]);
      const int b = std::max(obj_region[u], obj_region[v]);
      const Region r{a, b};
      round.pools[r].emplace_back(u, v);
      ++caps[r];
    }
  }

  Eigen::MatrixXd a = build_A(cfg.a_kind, s, &q, c);
  std::map<Region, double> sizes = region_sizes(memb);
  std::map<Region, double> masses = informativeness_mass(memb, a);
  std::map<Region, double> pi = region_proportions(sizes, masses, cfg.epsilon, &caps);
  std::map<Region, int> alloc =
      allocate_budget(rng ? jitter_proportions(pi, *rng) : pi, batch, caps);

  for (const Region& r : region_list(k_regions)) {
    const double size = sizes.at(r);
    const double mass = masses.at(r);
    round.plan.push_back({r, size, mass, mass / std::max(size, cfg.epsilon), pi.at(r), alloc.at(r),
                          caps.at(r)});
  }
  return round;
}

std::vector<std::pair<int, int>> unqueried_pairs(const SimilarityState& s) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(s.num_unqueried()));
  const int n = s.size();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!s.queried(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> pick_uniform(std::vector<std::pair<int, int>> pool, int take,
                                              std::mt19937_64& rng) {
  if (take >= static_cast<int>(pool.size())) return pool;
  std::vector<double> keys(pool.size());
  for (double& k : keys) k = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (keys[i] != keys[j]) return keys[i] < keys[j];
    return i < j;
  });
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) out.push_back(pool[idx[static_cast<std::size_t>(i)]]);
  return out;
}

std::vector<double> entropy_scores_for(const Eigen::MatrixXd& ent,
                                       const std::vector<std::pair<int, int>>& pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) out.push_back(ent(u, v));
  return out;
}

}  // namespace

StrategyConfig strategy_from_id(const std::string& id) {
  StrategyConfig cfg;
  if (id == "entropy") {
    cfg.kind = StrategyKind::entropy;
    return cfg;
  }
  if (id == "uniform") {
    cfg.kind = StrategyKind::uniform;
    return cfg;
  }
  if (id == "unient") {
    cfg.kind = StrategyKind::unient;
    return cfg;
  }
  const std::string prefix = "coverage-";
  if (id.rfind(prefix, 0) == 0) {
    std::string rest = id.substr(prefix.size());
    const auto dash = rest.rfind('-');
    if (dash != std::string::npos) {
      const std::string a = rest.substr(0, dash);
      const std::string mode = rest.substr(dash + 1);
      cfg.kind = StrategyKind::coverage;
      if (a == "entropy") cfg.a_kind = AKind::entropy;
      else if (a == "cost") cfg.a_kind = AKind::cost;
      else if (a == "freq") cfg.a_kind = AKind::freq;
      else if (a == "mu") cfg.a_kind = AKind::mu;
      else throw std::invalid_argument("unknown strategy id: " + id);
      if (mode == "hard") cfg.membership_mode = MembershipMode::hard;
      else if (mode == "soft") cfg.membership_mode = MembershipMode::soft;
      else throw std::invalid_argument("unknown strategy id: " + id);
      return cfg;
    }
  }
  throw std::invalid_argument("unknown strategy id: " + id);
}

std::string strategy_id(const StrategyConfig& cfg) {
  switch (cfg.kind) {
    case StrategyKind::entropy: return "entropy";
    case StrategyKind::uniform: return "uniform";
    case StrategyKind::unient: return "unient";
    case StrategyKind::coverage: break;
  }
  std::string a;
  switch (cfg.a_kind) {
    case AKind::entropy: a = "entropy"; break;
    case AKind::cost: a = "cost"; break;
    case AKind::freq: a = "freq"; break;
    case AKind::mu: a = "mu"; break;
  }
  return "coverage-" + a + (cfg.membership_mode == MembershipMode::hard ? "-hard" : "-soft");
}

std::vector<std::string> all_strategy_ids() {
  return {"coverage-entropy-hard", "coverage-cost-hard", "coverage-freq-hard", "coverage-mu-hard",
          "coverage-entropy-soft", "coverage-cost-soft", "coverage-freq-soft", "coverage-mu-soft",
          "entropy", "uniform", "unient"};
}

MembershipMatrix membership_hard(const Clustering& c) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(c.size(), c.num_clusters());
  for (int i = 0; i < c.size(); ++i) u(i, c.label(i)) = 1.0;
  return {std::move(u), MembershipMode::hard};
}

std::map<Region, double> region_sizes(const MembershipMatrix& m) {
  check_membership(m);
  const Eigen::VectorXd s = m.u.colwise().sum();
  const Eigen::MatrixXd gram = m.u.transpose() * m.u;
  const int k = static_cast<int>(m.u.cols());
  std::map<Region, double> out;
  for (int a = 0; a < k; ++a) {
    out[{a, a}] = std::max(0.0, (s(a) * s(a) - gram(a, a)) / 2.0);
    for (int b = a + 1; b < k; ++b) {
      out[{a, b}] = std::max(0.0, s(a) * s(b) - gram(a, b));
    }
  }
  return out;
}

std::map<Region, double> informativeness_mass(const MembershipMatrix& m, const Eigen::MatrixXd& a) {
  check_membership(m);
  check_score_matrix(a, m.u.rows());
  const Eigen::MatrixXd g = m.u.transpose() * a * m.u;
  const int k = static_cast<int>(m.u.cols());
  std::map<Region, double> out;
  for (int i = 0; i < k; ++i) {
    out[{i, i}] = std::max(0.0, g(i, i) / 2.0);
    for (int j = i + 1; j < k; ++j) {
      out[{i, j}] = std::max(0.0, g(i, j));
    }
  }
  return out;
}

std::map<Region, double> region_proportions(const std::map<Region, double>& sizes,
                                            const std::map<Region, double>& masses, double epsilon,
                                            const std::map<Region, long long>* caps) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("region_proportions: epsilon must be positive");
  if (sizes.size() != masses.size()) {
    throw std::invalid_argument("region_proportions: maps must share keys");
  }
  std::map<Region, double> scores;
  double total = 0.0;
  for (const auto& [r, size] : sizes) {
    auto it = masses.find(r);
    if (it == masses.end()) {
      throw std::invalid_argument("region_proportions: maps must share keys");
    }
    const double v = it->second / std::max(size, epsilon);
    scores[r] = v;
    total += v;
  }

  std::map<Region, double> pi;
  if (total > 0.0) {
    for (const auto& [r, v] : scores) pi[r] = v / total;
    return pi;
  }

  // Degenerate round: nothing scores, spread the batch evenly over regions
  // that can still absorb queries.
  std::vector<Region> eligible;
  for (const auto& [r, v] : scores) {
    if (!caps || caps->at(r) > 0) eligible.push_back(r);
  }
  if (eligible.empty()) {
    for (const auto& [r, v] : scores) eligible.push_back(r);
  }
  for (const auto& [r, v] : scores) pi[r] = 0.0;
  for (const Region& r : eligible) pi[r] = 1.0 / static_cast<double>(eligible.size());
  return pi;
}

Eigen::MatrixXd build_A(AKind kind, const SimilarityState& s, const Eigen::MatrixXd* q,
                        const Clustering& c) {
  const int n = s.size();
  if (kind == AKind::entropy) {
    if (q == nullptr) {
      throw std::invalid_argument("build_A: entropy informativeness needs the posterior q");
    }
    if (q->rows() != n) {
      throw std::invalid_argument("build_A: posterior q does not match similarity state");
    }
    return entropy_matrix(*q);
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double value = 0.0;
      switch (kind) {
        case AKind::cost:
          value = violates(u, v, c, s) ? std::abs(s.s(u, v)) : 0.0;
          break;
        case AKind::freq:
          value = s.queried(u, v) ? 0.0 : 1.0;
          break;
        case AKind::mu:
          value = 1.0 - std::abs(s.s(u, v));
          break;
        case AKind::entropy:
          break;
      }
      a(u, v) = value;
      a(v, u) = value;
    }
  }
  return a;
}

std::map<Region, int> allocate_budget(const std::map<Region, double>& pi, int batch,
                                      const std::map<Region, long long>& caps) {
  if (batch < 0) throw std::invalid_argument("allocate_budget: batch must be nonnegative");
  if (pi.size() != caps.size()) {
    throw std::invalid_argument("allocate_budget: maps must share keys");
  }
  std::map<Region, int> alloc;
  long long total_cap = 0;
  for (const auto& [r, cap] : caps) {
    if (cap < 0) throw std::invalid_argument("allocate_budget: capacities must be nonnegative");
    auto it = pi.find(r);
    if (it == pi.end()) {
      throw std::invalid_argument("allocate_budget: maps must share keys");
    }
    if (!(it->second >= 0.0)) {
      throw std::invalid_argument("allocate_budget: proportions must be nonnegative");
    }
    alloc[r] = 0;
    total_cap += cap;
  }

  long long remaining = std::min<long long>(batch, total_cap);
  while (remaining > 0) {
    std::vector<Region> active;
    double weight_sum = 0.0;
    for (const auto& [r, cap] : caps) {
      if (alloc[r] < cap) {
        active.push_back(r);
        weight_sum += pi.at(r);
      }
    }

    // Largest-remainder pass over the active regions.
    std::vector<long long> base(active.size(), 0);
    std::vector<double> frac(active.size(), 0.0);
    long long base_total = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double share = weight_sum > 0.0
                               ? pi.at(active[i]) / weight_sum * static_cast<double>(remaining)
                               : static_cast<double>(remaining) / static_cast<double>(active.size());
      base[i] = static_cast<long long>(std::floor(share));
      frac[i] = share - static_cast<double>(base[i]);
      base_total += base[i];
    }
    long long leftover = remaining - base_total;

    std::vector<std::size_t> order(active.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (frac[i] != frac[j]) return frac[i] > frac[j];
      return active[i] < active[j];
    });
    for (std::size_t rank = 0; rank < order.size() && leftover > 0; ++rank, --leftover) {
      ++base[order[rank]];
    }

    for (std::size_t i = 0; i < active.size(); ++i) {
      const Region r = active[i];
      const long long headroom = caps.at(r) - alloc[r];
      const long long grant = std::min(base[i], headroom);
      alloc[r] += static_cast<int>(grant);
      remaining -= grant;
    }
  }
  return alloc;
}

std::vector<std::pair<int, int>> sample_within_region(const std::vector<std::pair<int, int>>& pairs,
                                                      const std::vector<double>& scores, int take,
                                                      std::mt19937_64& rng) {
  if (scores.size() != pairs.size()) {
    throw std::invalid_argument("sample_within_region: scores do not match pairs");
  }
  if (take < 0 || take > static_cast<int>(pairs.size())) {
    throw std::logic_error("sample_within_region: allocation exceeds candidate pool");
  }
  for (double sc : scores) {
    if (!std::isfinite(sc) || sc < 0.0) {
      throw std::invalid_argument("sample_within_region: scores must be finite and nonnegative");
    }
  }
  if (take == static_cast<int>(pairs.size())) return pairs;

  std::vector<double> keys(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    keys[i] = std::log(std::max(scores[i], 1e-12)) + gumbel(rng);
  }
  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (keys[i] != keys[j]) return keys[i] > keys[j];
    return i < j;
  });
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) out.push_back(pairs[idx[static_cast<std::size_t>(i)]]);
  return out;
}

RegionPlan coverage_plan(const StrategyConfig& cfg, const SimilarityState& s, const Clustering& c,
                         const Eigen::MatrixXd& q, int batch, std::mt19937_64* rng) {
  return build_coverage_round(cfg, s, c, q, batch, rng).plan;
}

std::vector<std::pair<int, int>> select_batch(const StrategyConfig& cfg, int iter,
                                              const SimilarityState& s, const Clustering& c,
                                              const Eigen::MatrixXd& q, int batch,
                                              std::mt19937_64& rng) {
  if (batch < 1) throw std::invalid_argument("select_batch: batch must be at least 1");
  if (c.size() != s.size()) {
    throw std::invalid_argument("select_batch: clustering does not match similarity state");
  }
  const long long unqueried = s.num_unqueried();
  if (unqueried == 0) return {};
  const int take = static_cast<int>(std::min<long long>(batch, unqueried));

  StrategyKind effective = cfg.kind;
  if (cfg.kind == StrategyKind::coverage && iter >= cfg.switch_iter) {
    effective = StrategyKind::entropy;
  } else if (cfg.kind == StrategyKind::unient) {
    effective = iter < cfg.switch_iter ? StrategyKind::uniform : StrategyKind::entropy;
  }
  if (effective != StrategyKind::uniform && q.rows() != s.size()) {
    throw std::invalid_argument("select_batch: posterior q does not match similarity state");
  }

  std::vector<std::pair<int, int>> batch_out;
  switch (effective) {
    case StrategyKind::uniform:
      batch_out = pick_uniform(unqueried_pairs(s), take, rng);
      break;
    case StrategyKind::entropy: {
      auto pool = unqueried_pairs(s);
      const Eigen::MatrixXd ent = entropy_matrix(q);
      batch_out = sample_within_region(pool, entropy_scores_for(ent, pool), take, rng);
      break;
    }
    case StrategyKind::coverage: {
      CoverageRound round = build_coverage_round(cfg, s, c, q, take, &rng);
      const Eigen::MatrixXd ent = entropy_matrix(q);
      for (const RegionStats& rs : round.plan) {
        if (rs.allocation == 0) continue;
        const auto& pool = round.pools.at(rs.region);
        auto picked = sample_within_region(pool, entropy_scores_for(ent, pool), rs.allocation, rng);
        batch_out.insert(batch_out.end(), picked.begin(), picked.end());
      }
      break;
    }
    case StrategyKind::unient:
      break;  // unreachable, rewritten above
  }

  std::sort(batch_out.begin(), batch_out.end());
  return batch_out;
}

}  // namespace accc
