#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "prlab/error.hpp"
#include "prlab/graph.hpp"
#include "prlab/numeric.hpp"

namespace prlab {

struct PageRankConfig {
  double alpha = 0.85;
  double tol = 1e-12;
  /// 0 selects 10 * ceil(log(tol) / log(alpha)), at least 100.
  std::size_t max_iter = 0;

  std::size_t effective_max_iter() const {
    if (max_iter > 0) return max_iter;
    if (alpha <= 0.0) return 100;
    const double k = std::ceil(std::log(tol) / std::log(alpha));
    return std::max<std::size_t>(100, static_cast<std::size_t>(10.0 * k));
  }

  void validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
      throw Error(ErrorCode::kInvalidParams, "alpha must lie in [0, 1)");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidParams, "tol must be positive");
  }
};

struct PageRankResult {
  ProbabilityVector pi;
  std::size_t iterations = 0;
  /// L1 norm of the last step pi_{k+1} - pi_k.
  double final_residual = 0.0;
  /// False when max_iter ran out first; `pi` is then the last iterate.
  bool converged = false;
};

/// Personalized PageRank by damped power iteration
///   pi_{k+1} = alpha P pi_k + (1 - alpha) v,   pi_0 = v,
/// stopping once the L1 step falls to cfg.tol. The step after k iterations
/// is at most 2 alpha^k. The converged iterate is divided by its sum to
/// absorb rounding drift.
inline PageRankResult pagerank_power(const Graph& g, const ProbabilityVector& v,
                                     const PageRankConfig& cfg) {
  cfg.validate();
  detail::require_length(g, v.size());
  detail::require_positive_degrees(g);

  const double alpha = cfg.alpha;
  if (alpha == 0.0) return PageRankResult{v, 1, 0.0, true};

  const std::size_t n = g.n();
  const std::size_t max_iter = cfg.effective_max_iter();
  std::vector<double> current(v.begin(), v.end());
  std::vector<double> next(n), scratch;
  PageRankResult result;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    apply_P_into(g, current, next, scratch);
    for (std::size_t i = 0; i < n; ++i) next[i] = alpha * next[i] + (1.0 - alpha) * v[i];
    result.final_residual = l1_distance(next, current);
    result.iterations = k;
    current.swap(next);
    if (result.final_residual <= cfg.tol) {
      result.converged = true;
      break;
    }
  }
  const double s = pairwise_sum(current);
  if (s != 1.0) {
    for (double& x : current) x /= s;
  }
  result.pi = ProbabilityVector(std::move(current));
  return result;
}

inline constexpr std::size_t kDenseSolveLimit = 4096;

/// Reference solution of (I - alpha P) pi = (1 - alpha) v by LU with partial
/// pivoting on the dense n x n system. O(n^3); n <= 4096.
inline ProbabilityVector pagerank_dense_oracle(const Graph& g, const ProbabilityVector& v,
                                               double alpha) {
  if (g.n() > kDenseSolveLimit) {
    throw Error(ErrorCode::kTooLargeForDense, "n = " + std::to_string(g.n()));
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "alpha must lie in [0, 1)");
  }
  detail::require_length(g, v.size());
  detail::require_positive_degrees(g);
  // The system is the identity.
  if (alpha == 0.0) return v;

  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Vertex j : g.neighbors(static_cast<std::size_t>(i))) {
      system(i, j) -= alpha / g.degree(j);
    }
  }
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = (1.0 - alpha) * v[static_cast<std::size_t>(i)];
  const Eigen::VectorXd x = system.partialPivLu().solve(rhs);
  return ProbabilityVector::renormalized(std::vector<double>(x.data(), x.data() + n), 1e-9);
}

inline ProbabilityVector preference_uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kEmptySet, "n = 0");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

inline ProbabilityVector preference_unit(std::size_t n, std::size_t k) {
  if (k >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, std::to_string(k) + " >= " + std::to_string(n));
  }
  std::vector<double> v(n, 0.0);
  v[k] = 1.0;
  return ProbabilityVector(std::move(v));
}

/// Uniform over the distinct members of `members`.
inline ProbabilityVector preference_set(std::size_t n, std::span<const std::size_t> members) {
  if (members.empty()) throw Error(ErrorCode::kEmptySet, "preference set is empty");
  std::vector<char> in(n, 0);
  for (auto k : members) {
    if (k >= n) {
      throw Error(ErrorCode::kIndexOutOfRange, std::to_string(k) + " >= " + std::to_string(n));
    }
    in[k] = 1;
  }
  const auto count = static_cast<double>(std::count(in.begin(), in.end(), 1));
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i]) v[i] = 1.0 / count;
  }
  return ProbabilityVector(std::move(v));
}

inline ProbabilityVector preference_set(std::size_t n, std::initializer_list<std::size_t> members) {
  return preference_set(n, std::span<const std::size_t>(members.begin(), members.size()));
}

}  // namespace prlab
