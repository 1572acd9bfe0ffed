#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "prlab/error.hpp"
#include "prlab/generators.hpp"
#include "prlab/graph.hpp"

namespace prlab {

/// Degree-mixture approximation alpha d / vol(G) + (1 - alpha) v. Valid for
/// alpha in [0, 1]; the endpoints give v and d / vol exactly.
inline ProbabilityVector asymptotic_mixture(const Graph& g, const ProbabilityVector& v,
                                            double alpha) {
  if (g.volume() == 0) throw Error(ErrorCode::kEmptyGraph, "volume is zero");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "alpha must lie in [0, 1]");
  }
  detail::require_length(g, v.size());
  const double vol = static_cast<double>(g.volume());
  std::vector<double> out(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    out[i] = alpha * (g.degree(i) / vol) + (1.0 - alpha) * v[i];
  }
  return ProbabilityVector(std::move(out));
}

/// Average Markov operator Pbar = Abar W^{-1} of the two-community SBM.
///
/// Abar carries p on its diagonal (the expected adjacency of the model with
/// self-pairs), which makes the decomposition
///   Abar = (p+q)/2 11^T + n/2 (p-q) uu^T       (m = n/2)
/// exact. Generated graphs have zero diagonal; that O(p / w) mismatch is
/// part of the measured error. W is diag of Abar's column sums, so Pbar is
/// exactly column-stochastic.
///
/// Pbar x is constant on each community and depends on x only through the
/// two community sums, so it costs O(n).
class SbmAverageOperator {
 public:
  explicit SbmAverageOperator(const SbmParams& params) : params_(params) {
    params_.validate();
    const std::array<double, 2> size{static_cast<double>(params_.m),
                                     static_cast<double>(params_.n - params_.m)};
    const std::array<double, 2> w{params_.w1(), params_.w2()};
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        const double a = k == l ? params_.p : params_.q;
        per_vertex_[k][l] = a / w[l];
        block_[k][l] = size[k] * a / w[l];
      }
    }
  }

  const SbmParams& params() const { return params_; }

  /// block_row_sums()[k][l]: mass Pbar moves from community l into
  /// community k. Each column sums to one.
  const std::array<std::array<double, 2>, 2>& block_row_sums() const { return block_; }

  /// Value of (Pbar x)_i for i in community k, given community sums of x.
  double value(int k, const std::array<double, 2>& community_sums) const {
    return per_vertex_[k][0] * community_sums[0] + per_vertex_[k][1] * community_sums[1];
  }

  std::array<double, 2> community_sums(std::span<const double> x) const {
    std::array<double, 2> s{0.0, 0.0};
    s[0] = pairwise_sum(0, params_.m, [&](std::size_t i) { return x[i]; });
    s[1] = pairwise_sum(params_.m, params_.n, [&](std::size_t i) { return x[i]; });
    return s;
  }

  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != params_.n) throw Error(ErrorCode::kLengthMismatch, "Pbar apply");
    const auto s = community_sums(x);
    std::vector<double> y(params_.n);
    for (std::size_t i = 0; i < params_.n; ++i) y[i] = value(params_.in_c1(i) ? 0 : 1, s);
    return y;
  }

 private:
  SbmParams params_;
  std::array<std::array<double, 2>, 2> per_vertex_{};
  std::array<std::array<double, 2>, 2> block_{};
};

/// Asymptotic SBM PageRank (1 - alpha)(I - alpha Pbar)^{-1} v by fixed-point
/// iteration pi <- alpha Pbar pi + (1 - alpha) v.
///
/// Every iterate has the form (1 - alpha) v + c_k on community k, so the
/// iteration runs on the two offsets (c_1, c_2) and assembles pi once.
inline ProbabilityVector sbm_asymptotic(const SbmParams& params, const ProbabilityVector& v,
                                        double alpha) {
  const SbmAverageOperator op(params);
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "alpha must lie in [0, 1)");
  }
  if (v.size() != params.n) throw Error(ErrorCode::kLengthMismatch, "|v| != n");

  const auto v_sums = op.community_sums(v.values());
  const std::array<double, 2> size{static_cast<double>(params.m),
                                   static_cast<double>(params.n - params.m)};
  std::array<double, 2> offset{0.0, 0.0};
  // The step shrinks by a factor alpha per iteration; iterate to a step of
  // 1e-16, well below the 1e-13 target, bounded by the contraction count.
  constexpr double kStepTol = 1e-16;
  const auto max_iter = static_cast<std::size_t>(200 + 40 * std::ceil(1.0 / (1.0 - alpha)));
  for (std::size_t it = 0; it < max_iter; ++it) {
    const std::array<double, 2> sums{(1.0 - alpha) * v_sums[0] + size[0] * offset[0],
                                     (1.0 - alpha) * v_sums[1] + size[1] * offset[1]};
    const std::array<double, 2> next{alpha * op.value(0, sums), alpha * op.value(1, sums)};
    const double step =
        size[0] * std::abs(next[0] - offset[0]) + size[1] * std::abs(next[1] - offset[1]);
    offset = next;
    if (step <= kStepTol) break;
  }
  std::vector<double> pi(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    pi[i] = (1.0 - alpha) * v[i] + offset[params.in_c1(i) ? 0 : 1];
  }
  return ProbabilityVector(std::move(pi));
}

/// Closed form for two equal communities (m = n/2):
///   alpha/n 1 + (1 - alpha) (v + alpha beta / (1 - alpha beta) (v^T u) u)
/// with beta = (p - q)/(p + q) and u = +-1/sqrt(n) by community.
inline ProbabilityVector sbm_equal_closed_form(std::size_t n, double p, double q,
                                               const ProbabilityVector& v, double alpha) {
  if (n % 2 != 0) throw Error(ErrorCode::kOddN, "n = " + std::to_string(n));
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "n = 0");
  if (!(p >= 0.0 && q >= 0.0 && p + q > 0.0 && p <= 1.0 && q <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "need 0 <= p, q <= 1 with p + q > 0");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "alpha must lie in [0, 1)");
  }
  if (v.size() != n) throw Error(ErrorCode::kLengthMismatch, "|v| != n");

  const std::size_t half = n / 2;
  const double nd = static_cast<double>(n);
  const double beta = (p - q) / (p + q);
  const double gain = alpha * beta / (1.0 - alpha * beta);
  const double s1 = pairwise_sum(0, half, [&](std::size_t i) { return v[i]; });
  const double s2 = pairwise_sum(half, n, [&](std::size_t i) { return v[i]; });
  // (v^T u) u_i = +-(s1 - s2) / n
  const double projection = (s1 - s2) / nd;
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u_term = i < half ? projection : -projection;
    pi[i] = alpha / nd + (1.0 - alpha) * (v[i] + gain * u_term);
  }
  return ProbabilityVector(std::move(pi));
}

}  // namespace prlab
