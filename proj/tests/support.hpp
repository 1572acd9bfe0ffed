#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "prlab/error.hpp"
#include "prlab/graph.hpp"

namespace prlab::testing {

inline void expect_vec_near(const std::vector<double>& got, const std::vector<double>& want,
                            double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

/// Code of the prlab::Error thrown by f; records a failure if none is.
inline ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

inline Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return build_graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return build_graph(n, e);
}

/// Random spanning tree (each vertex attaches to an earlier one) plus each
/// remaining pair with probability `extra`, under a random relabeling.
inline Graph random_connected_graph(std::size_t n, double extra, std::mt19937_64& rng) {
  std::vector<Vertex> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<Vertex>(i);
  std::shuffle(label.begin(), label.end(), rng);
  std::set<std::pair<Vertex, Vertex>> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    Vertex u = label[a], v = label[b];
    if (u > v) std::swap(u, v);
    edges.emplace(u, v);
  };
  for (std::size_t i = 1; i < n; ++i) {
    add(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
  }
  std::bernoulli_distribution coin(extra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) add(i, j);
    }
  }
  std::vector<Edge> e(edges.begin(), edges.end());
  return build_graph(n, e);
}

/// Random probability vector; roughly half the draws are sparse.
inline ProbabilityVector random_probability_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const bool sparse = u(rng) < 0.5;
  std::vector<double> v(n);
  for (auto& x : v) x = sparse && u(rng) < 0.7 ? 0.0 : u(rng);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  double s = 0.0;
  for (double x : v) s += x;
  for (auto& x : v) x /= s;
  return ProbabilityVector::renormalized(std::move(v), 1e-9);
}

}  // namespace prlab::testing
