#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prlab/error.hpp"
#include "prlab/graph.hpp"
#include "prlab/numeric.hpp"
#include "prlab/seed.hpp"

// Random graph families with independent edges: Erdos-Renyi, Chung-Lu
// (expected-degree) and the two-community stochastic block model.
//
// All generators enumerate unordered pairs i < j only; there are no
// self-pairs. Under Chung-Lu this makes E[d_i] = w_i - w_i^2 / sum(w)
// rather than w_i exactly. The gap is at most w_max^2 / sum(w) <= 1 and is
// negligible at the degrees the experiments use.
//
// Each generator is a pure function of its parameters and Seed. Dense
// regimes draw one uniform per pair; sparse regimes skip geometrically
// between successes. Only the joint edge distribution and per-seed
// determinism are part of the contract, not the order of draws.

namespace prlab {

enum class WeightProvenance { kConstant, kGeometricClipped, kPowerLaw, kSbmBlock };

constexpr std::string_view to_string(WeightProvenance p) {
  switch (p) {
    case WeightProvenance::kConstant: return "constant";
    case WeightProvenance::kGeometricClipped: return "geometric_clipped";
    case WeightProvenance::kPowerLaw: return "power_law";
    case WeightProvenance::kSbmBlock: return "sbm_block";
  }
  return "unknown";
}

/// Expected-degree sequence. Construction checks positivity and
/// admissibility (max w_i^2 <= sum w), so every w_i w_j / sum(w) <= 1.
class WeightVector {
 public:
  WeightVector(std::vector<double> w, WeightProvenance provenance,
               std::map<std::string, double> params = {})
      : w_(std::move(w)), provenance_(provenance), params_(std::move(params)) {
    if (w_.empty()) throw Error(ErrorCode::kInadmissibleWeights, "empty weight vector");
    for (double x : w_) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::kInadmissibleWeights, "weights must be positive and finite");
      }
    }
    sum_ = pairwise_sum(w_);
    max_ = *std::max_element(w_.begin(), w_.end());
    min_ = *std::min_element(w_.begin(), w_.end());
    if (max_ * max_ > sum_) {
      throw Error(ErrorCode::kInadmissibleWeights,
                  "max w^2 = " + std::to_string(max_ * max_) + " exceeds sum w = " +
                      std::to_string(sum_));
    }
  }

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const { return w_; }
  double sum() const { return sum_; }
  double max() const { return max_; }
  double min() const { return min_; }
  double mean() const { return sum_ / static_cast<double>(w_.size()); }
  WeightProvenance provenance() const { return provenance_; }
  const std::map<std::string, double>& params() const { return params_; }

 private:
  std::vector<double> w_;
  WeightProvenance provenance_;
  std::map<std::string, double> params_;
  double sum_ = 0.0;
  double max_ = 0.0;
  double min_ = 0.0;
};

/// Two-community SBM G(m, n - m, p, q). Vertices [0, m) form C1 and
/// [m, n) form C2. p == q (no community structure) and q == 0 (disjoint
/// blocks) are accepted as degenerate cases.
struct SbmParams {
  std::size_t m = 0;
  std::size_t n = 0;
  double p = 0.0;
  double q = 0.0;

  void validate() const {
    if (n < 2 || 2 * m < n || m >= n) {
      throw Error(ErrorCode::kInvalidParams, "need n/2 <= m < n, got m=" + std::to_string(m) +
                                                 " n=" + std::to_string(n));
    }
    if (!(p > 0.0 && p <= 1.0) || !(q >= 0.0 && q <= p)) {
      throw Error(ErrorCode::kInvalidParams, "need 0 <= q <= p <= 1 and p > 0");
    }
  }

  bool in_c1(std::size_t i) const { return i < m; }

  /// Column sums of the expected adjacency with diagonal p, for C1 and C2.
  /// These are the W used by the average operators.
  double w1() const { return m * p + (n - m) * q; }
  double w2() const { return (n - m) * p + m * q; }
  double w_max() const { return w1(); }
  double w_min() const { return w2(); }

  /// Exact E[d_i] of the generated (loop-free) graph for C1 and C2.
  double expected_degree_c1() const { return (m - 1) * p + (n - m) * q; }
  double expected_degree_c2() const { return (n - m - 1) * p + m * q; }
};

namespace detail {

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, "p = " + std::to_string(p));
  }
}

constexpr double kDenseThreshold = 0.1;

/// Emits (row, j) for j in [j_begin, j_end), each independently with
/// probability p, in increasing j.
inline void sample_row(Vertex row, std::size_t j_begin, std::size_t j_end, double p,
                       Engine& engine, std::vector<Edge>& out) {
  if (p <= 0.0 || j_begin >= j_end) return;
  if (p >= kDenseThreshold) {
    for (std::size_t j = j_begin; j < j_end; ++j) {
      if (uniform01(engine) < p) out.emplace_back(row, static_cast<Vertex>(j));
    }
    return;
  }
  const double log_q = std::log1p(-p);
  std::size_t j = j_begin;
  while (true) {
    // Failures before the next success are Geometric(p).
    const double skip = std::floor(std::log1p(-uniform01(engine)) / log_q);
    if (skip >= static_cast<double>(j_end - j)) return;
    j += static_cast<std::size_t>(skip);
    out.emplace_back(row, static_cast<Vertex>(j));
    ++j;
    if (j >= j_end) return;
  }
}

}  // namespace detail

/// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs independently.
inline Graph gen_er(std::size_t n, double p, const Seed& seed) {
  detail::check_probability(p);
  auto engine = make_engine(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n > 0 ? n - 1 : 0) / 2 * 1.05) + 16);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    detail::sample_row(static_cast<Vertex>(i), i + 1, n, p, engine, edges);
  }
  return build_graph(n, edges);
}

/// Chung-Lu graph: pair {i, j} is an edge with probability w_i w_j / sum(w).
inline Graph gen_chung_lu(const WeightVector& w, const Seed& seed) {
  const std::size_t n = w.size();
  const double total = w.sum();
  auto engine = make_engine(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(total / 2 * 1.05) + 16);
  auto prob = [&](std::size_t i, std::size_t j) {
    return std::clamp(w[i] * w[j] / total, 0.0, 1.0);
  };

  if (w.mean() > static_cast<double>(n) * detail::kDenseThreshold) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (uniform01(engine) < prob(i, j)) {
          edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
      }
    }
    return build_graph(n, edges);
  }

  // Sparse: visit vertices by nonincreasing weight so the pair probability
  // is nonincreasing along each row. Skip geometrically with the current
  // upper bound and thin by the ratio of the true probability to the bound.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return w[a] > w[b]; });
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const Vertex u = order[a];
    std::size_t b = a + 1;
    double bound = prob(u, order[b]);
    while (b < n && bound > 0.0) {
      if (bound < 1.0) {
        const double skip = std::floor(std::log1p(-uniform01(engine)) / std::log1p(-bound));
        if (skip >= static_cast<double>(n - b)) break;
        b += static_cast<std::size_t>(skip);
      }
      const double actual = prob(u, order[b]);
      if (uniform01(engine) < actual / bound) {
        const Vertex v = order[b];
        edges.emplace_back(std::min(u, v), std::max(u, v));
      }
      bound = actual;
      ++b;
    }
  }
  std::sort(edges.begin(), edges.end());
  return build_graph(n, edges);
}

/// Two-community SBM: probability p inside a community, q across.
inline Graph gen_sbm(const SbmParams& params, const Seed& seed) {
  params.validate();
  const std::size_t n = params.n;
  const std::size_t m = params.m;
  auto engine = make_engine(seed);
  std::vector<Edge> edges;
  const double expected =
      params.p * (m * (m - 1) + (n - m) * (n - m - 1)) / 2.0 + params.q * m * (n - m);
  edges.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto row = static_cast<Vertex>(i);
    if (i < m) {
      detail::sample_row(row, i + 1, m, params.p, engine, edges);
      detail::sample_row(row, m, n, params.q, engine, edges);
    } else {
      detail::sample_row(row, i + 1, n, params.p, engine, edges);
    }
  }
  return build_graph(n, edges);
}

inline WeightVector constant_weights(std::size_t n, double c) {
  return WeightVector(std::vector<double>(n, c), WeightProvenance::kConstant,
                      {{"n", static_cast<double>(n)}, {"c", c}});
}

/// Exact expected degrees of gen_sbm output, as a weight vector.
inline WeightVector sbm_expected_degrees(const SbmParams& params) {
  params.validate();
  std::vector<double> w(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    w[i] = params.in_c1(i) ? params.expected_degree_c1() : params.expected_degree_c2();
  }
  return WeightVector(std::move(w), WeightProvenance::kSbmBlock,
                      {{"m", static_cast<double>(params.m)},
                       {"n", static_cast<double>(params.n)},
                       {"p", params.p},
                       {"q", params.q}});
}

/// Power-law expected degrees w_k = c (i0 + k)^(-1/(beta-1)), k = 1..n, with
///   c  = (beta-2)/(beta-1) * d * n^(1/(beta-1))
///   i0 = n * (d (beta-2) / (m_cap (beta-1)))^(beta-1)
/// so the average is about d and the maximum about m_cap.
///
/// The i0 expression as usually printed for this construction is garbled
/// (unbalanced parenthesis, no exponent). The form above is the one that
/// makes w_1 = m_cap in the continuum limit together with the stated c; it
/// is a reconstruction, not a transcription.
inline WeightVector power_law_weights(std::size_t n, double beta, double d, double m_cap) {
  if (!(beta > 2.0)) throw Error(ErrorCode::kInvalidExponent, "beta must exceed 2");
  if (!(d > 0.0) || !(m_cap > 0.0) || n == 0) {
    throw Error(ErrorCode::kInvalidParams, "need n > 0, d > 0, m_cap > 0");
  }
  const double nd = static_cast<double>(n);
  const double c = (beta - 2.0) / (beta - 1.0) * d * std::pow(nd, 1.0 / (beta - 1.0));
  const double i0 = nd * std::pow(d * (beta - 2.0) / (m_cap * (beta - 1.0)), beta - 1.0);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = c * std::pow(i0 + static_cast<double>(k + 1), -1.0 / (beta - 1.0));
  }
  return WeightVector(std::move(w), WeightProvenance::kPowerLaw,
                      {{"n", nd}, {"beta", beta}, {"d", d}, {"m_cap", m_cap}, {"c", c}, {"i0", i0}});
}

/// I.i.d. geometric weights on {1, 2, ...} with the given mean, clipped into
/// [L, ratio * L] with L = mean / 3. Clipping pulls the realized mean to
/// about 0.95 * mean for ratio 7; the realized value is recorded in
/// params()["realized_mean"].
inline WeightVector geometric_clipped_weights(std::size_t n, double mean, double ratio,
                                              const Seed& seed) {
  if (!(mean > 1.0) || !(ratio > 1.0) || n == 0) {
    throw Error(ErrorCode::kInvalidParams, "need mean > 1, ratio > 1, n > 0");
  }
  auto engine = make_engine(seed);
  std::geometric_distribution<long long> failures(1.0 / mean);
  const double lower = mean / 3.0;
  const double upper = ratio * lower;
  std::vector<double> w(n);
  for (auto& x : w) {
    x = std::clamp(static_cast<double>(1 + failures(engine)), lower, upper);
  }
  const double realized = pairwise_sum(w) / static_cast<double>(n);
  return WeightVector(std::move(w), WeightProvenance::kGeometricClipped,
                      {{"n", static_cast<double>(n)},
                       {"mean", mean},
                       {"ratio", ratio},
                       {"lower", lower},
                       {"realized_mean", realized}});
}

inline WeightVector read_weights(std::span<const double> values,
                                 WeightProvenance provenance = WeightProvenance::kConstant) {
  return WeightVector(std::vector<double>(values.begin(), values.end()), provenance);
}

}  // namespace prlab
