#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prlab/error.hpp"
#include "prlab/numeric.hpp"

namespace prlab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class Graph;
inline Graph build_graph(std::size_t n, std::span<const Edge> edges);

/// Nonnegative length-n vector summing to one. Every constructor validates,
/// so holding one is proof of the invariant.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  ProbabilityVector() = default;

  explicit ProbabilityVector(std::vector<double> values,
                             double sum_tolerance = kSumTolerance)
      : values_(std::move(values)) {
    check(sum_tolerance);
  }

  /// Validates against `sum_tolerance`, then divides by the sum so the
  /// stored vector sums to one up to rounding.
  static ProbabilityVector renormalized(std::vector<double> values,
                                        double sum_tolerance) {
    ProbabilityVector out;
    out.values_ = std::move(values);
    const double s = out.check(sum_tolerance);
    for (double& x : out.values_) x /= s;
    return out;
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  double check(double sum_tolerance) const {
    if (values_.empty()) {
      throw Error(ErrorCode::kInvalidProbabilityVector, "empty vector");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
        throw Error(ErrorCode::kInvalidProbabilityVector,
                    "entry " + std::to_string(i) + " is negative or not finite");
      }
    }
    const double s = pairwise_sum(values_);
    if (std::abs(s - 1.0) > sum_tolerance) {
      throw Error(ErrorCode::kInvalidProbabilityVector,
                  "entries sum to " + std::to_string(s));
    }
    return s;
  }

  std::vector<double> values_;
};

/// Immutable simple undirected graph in compressed sparse row form. Both
/// directions of every edge are stored and each adjacency row is sorted.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  std::size_t n() const { return degrees_.size(); }
  std::size_t num_edges() const { return neighbors_.size() / 2; }
  std::uint64_t volume() const { return neighbors_.size(); }

  std::uint32_t degree(std::size_t i) const { return degrees_[i]; }
  std::span<const std::uint32_t> degrees() const { return degrees_; }
  std::uint32_t min_degree() const { return min_degree_; }
  std::uint32_t max_degree() const { return max_degree_; }

  std::span<const Vertex> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }

  /// 1/d_i, or 0 for isolated vertices.
  std::span<const double> inv_degree() const { return inv_degree_; }
  /// 1/sqrt(d_i), or 0 for isolated vertices.
  std::span<const double> inv_sqrt_degree() const { return inv_sqrt_degree_; }

  /// Each undirected edge once as (i, j) with i < j, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t i = 0; i < n(); ++i) {
      for (Vertex j : neighbors(i)) {
        if (j > i) out.emplace_back(static_cast<Vertex>(i), j);
      }
    }
    return out;
  }

  friend Graph build_graph(std::size_t n, std::span<const Edge> edges);

 private:
  void finish() {
    const std::size_t n = offsets_.size() - 1;
    degrees_.resize(n);
    inv_degree_.resize(n);
    inv_sqrt_degree_.resize(n);
    min_degree_ = n == 0 ? 0 : std::numeric_limits<std::uint32_t>::max();
    max_degree_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = static_cast<std::uint32_t>(offsets_[i + 1] - offsets_[i]);
      degrees_[i] = d;
      inv_degree_[i] = d == 0 ? 0.0 : 1.0 / d;
      inv_sqrt_degree_[i] = d == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(d));
      min_degree_ = std::min(min_degree_, d);
      max_degree_ = std::max(max_degree_, d);
    }
  }

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<std::uint32_t> degrees_;
  std::vector<double> inv_degree_;
  std::vector<double> inv_sqrt_degree_;
  std::uint32_t min_degree_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// Builds a simple undirected graph. Each pair is one undirected edge; the
/// same pair listed twice, in either orientation, is a DuplicateEdge.
inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw Error(ErrorCode::kInvalidParams, "vertex count exceeds 32-bit range");
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorCode::kOutOfRangeVertex,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") with n=" + std::to_string(n));
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(u));
    }
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    // Lexicographically ordered input (what the generators emit) yields
    // sorted rows already.
    if (!std::is_sorted(first, last)) std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge (" + std::to_string(i) + "," + std::to_string(*dup) + ")");
    }
  }
  g.finish();
  return g;
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

namespace detail {

inline void require_positive_degrees(const Graph& g) {
  if (g.n() > 0 && g.min_degree() == 0) {
    throw Error(ErrorCode::kZeroDegreeVertex, "operator needs every degree >= 1");
  }
}

inline void require_length(const Graph& g, std::size_t len) {
  if (len != g.n()) {
    throw Error(ErrorCode::kLengthMismatch,
                "vector length " + std::to_string(len) + " vs n=" + std::to_string(g.n()));
  }
}

}  // namespace detail

/// y = A D^{-1} x, written into `y`. `scratch` holds x_j / d_j.
inline void apply_P_into(const Graph& g, std::span<const double> x, std::span<double> y,
                         std::vector<double>& scratch) {
  const std::size_t n = g.n();
  const auto inv_d = g.inv_degree();
  scratch.resize(n);
  for (std::size_t j = 0; j < n; ++j) scratch[j] = x[j] * inv_d[j];
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (Vertex j : g.neighbors(i)) s += scratch[j];
    y[i] = s;
  }
}

/// Column-stochastic random-walk operator: y_i = sum_j A_ij x_j / d_j.
inline std::vector<double> apply_P(const Graph& g, std::span<const double> x) {
  detail::require_positive_degrees(g);
  detail::require_length(g, x.size());
  std::vector<double> y(g.n()), scratch;
  apply_P_into(g, x, y, scratch);
  return y;
}

/// y = D^{-1/2} A D^{-1/2} x, written into `y`.
inline void apply_Q_into(const Graph& g, std::span<const double> x, std::span<double> y,
                         std::vector<double>& scratch) {
  const std::size_t n = g.n();
  const auto inv_sqrt_d = g.inv_sqrt_degree();
  scratch.resize(n);
  for (std::size_t j = 0; j < n; ++j) scratch[j] = x[j] * inv_sqrt_d[j];
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (Vertex j : g.neighbors(i)) s += scratch[j];
    y[i] = s * inv_sqrt_d[i];
  }
}

/// Symmetrized transition operator Q = D^{-1/2} A D^{-1/2}.
inline std::vector<double> apply_Q(const Graph& g, std::span<const double> x) {
  detail::require_positive_degrees(g);
  detail::require_length(g, x.size());
  std::vector<double> y(g.n()), scratch;
  apply_Q_into(g, x, y, scratch);
  return y;
}

/// Perron-Frobenius eigenvector of Q: D^{1/2} 1 / sqrt(vol).
inline std::vector<double> perron_vector(const Graph& g) {
  if (g.volume() == 0) throw Error(ErrorCode::kEmptyGraph, "volume is zero");
  const double inv_sqrt_vol = 1.0 / std::sqrt(static_cast<double>(g.volume()));
  std::vector<double> u(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    u[i] = std::sqrt(static_cast<double>(g.degree(i))) * inv_sqrt_vol;
  }
  return u;
}

/// Component label per vertex (labels numbered in order of discovery from
/// vertex 0 upward) and the component count.
inline std::pair<std::vector<std::uint32_t>, std::size_t> connected_components(const Graph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.n(), kUnset);
  std::vector<Vertex> queue;
  queue.reserve(g.n());
  std::uint32_t count = 0;
  for (std::size_t s = 0; s < g.n(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = count;
    queue.assign(1, static_cast<Vertex>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex j : g.neighbors(queue[head])) {
        if (label[j] == kUnset) {
          label[j] = count;
          queue.push_back(j);
        }
      }
    }
    ++count;
  }
  return {std::move(label), count};
}

inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  if (g.min_degree() == 0) return false;
  return connected_components(g).second == 1;
}

/// Induced subgraph on one component. `vertices[k]` is the original id of
/// new vertex k; ids keep their relative order.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> vertices;
};

/// Largest connected component; ties go to the component containing the
/// smallest vertex id.
inline Subgraph largest_component(const Graph& g) {
  const auto [label, count] = connected_components(g);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  const auto best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  Subgraph out;
  std::vector<Vertex> new_id(g.n(), 0);
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (count > 0 && label[i] == best) {
      new_id[i] = static_cast<Vertex>(out.vertices.size());
      out.vertices.push_back(static_cast<Vertex>(i));
    }
  }
  std::vector<Edge> edges;
  for (Vertex old_i : out.vertices) {
    for (Vertex old_j : g.neighbors(old_i)) {
      if (old_j > old_i) edges.emplace_back(new_id[old_i], new_id[old_j]);
    }
  }
  out.graph = build_graph(out.vertices.size(), edges);
  return out;
}

/// Stationary distribution of the simple random walk, d / vol(G).
inline ProbabilityVector stationary_distribution(const Graph& g) {
  if (g.n() == 0 || g.volume() == 0) {
    throw Error(ErrorCode::kDisconnectedGraph, "graph has no edges");
  }
  if (!is_connected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph, "stationary distribution is not unique");
  }
  const double vol = static_cast<double>(g.volume());
  std::vector<double> pi(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) pi[i] = g.degree(i) / vol;
  return ProbabilityVector(std::move(pi));
}

}  // namespace prlab
