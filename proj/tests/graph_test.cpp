#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "prlab/graph.hpp"
#include "prlab/io.hpp"
#include "support.hpp"

namespace prlab {
namespace {

using testing::code_of;
using testing::complete_graph;
using testing::expect_vec_near;
using testing::path_graph;
using testing::random_connected_graph;
using testing::star_graph;

TEST(BuildGraph, PathDegreesAndVolume) {
  const auto g = build_graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(g.n(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.volume(), 4u);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.degree(2), 1u);
}

TEST(BuildGraph, EmptyEdgeSet) {
  const auto g = build_graph(2, {});
  EXPECT_EQ(g.volume(), 0u);
  EXPECT_EQ(g.min_degree(), 0u);
}

TEST(BuildGraph, Rejections) {
  EXPECT_EQ(code_of([] { build_graph(3, {{0, 0}}); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([] { build_graph(3, {{0, 3}}); }), ErrorCode::kOutOfRangeVertex);
  EXPECT_EQ(code_of([] { build_graph(3, {{0, 1}, {1, 0}}); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] { build_graph(3, {{0, 1}, {0, 1}}); }), ErrorCode::kDuplicateEdge);
}

TEST(BuildGraph, RowsSortedAndSymmetric) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(40, 0.1, rng);
    std::uint64_t degree_sum = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const auto row = g.neighbors(i);
      EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
      EXPECT_EQ(row.size(), g.degree(i));
      degree_sum += g.degree(i);
      for (Vertex j : row) {
        EXPECT_NE(j, i);
        const auto back = g.neighbors(j);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), static_cast<Vertex>(i)));
      }
    }
    EXPECT_EQ(degree_sum, g.volume());
  }
}

TEST(BuildGraph, EdgesRoundTrip) {
  std::mt19937_64 rng(11);
  const auto g = random_connected_graph(30, 0.2, rng);
  const auto edges = g.edges();
  EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
  const auto h = build_graph(g.n(), edges);
  EXPECT_EQ(h.edges(), edges);
}

TEST(ApplyP, HandValues) {
  const auto p3 = path_graph(3);
  expect_vec_near(apply_P(p3, std::vector<double>{1, 0, 0}), {0, 1, 0}, 0.0);
  expect_vec_near(apply_P(p3, std::vector<double>{0, 1, 0}), {0.5, 0, 0.5}, 0.0);
  const auto k4 = complete_graph(4);
  expect_vec_near(apply_P(k4, std::vector<double>(4, 0.25)), std::vector<double>(4, 0.25), 1e-16);
}

TEST(ApplyP, ConservesMass) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(50, 0.05, rng);
    std::vector<double> x(g.n());
    for (auto& xi : x) xi = u(rng);
    const auto y = apply_P(g, x);
    EXPECT_NEAR(pairwise_sum(y), pairwise_sum(x), 1e-12);
  }
}

TEST(ApplyQ, HandValues) {
  expect_vec_near(apply_Q(complete_graph(4), std::vector<double>{1, -1, 0, 0}),
                  {-1.0 / 3, 1.0 / 3, 0, 0}, 1e-15);
  expect_vec_near(apply_Q(path_graph(3), std::vector<double>{1, 0, -1}), {0, 0, 0}, 1e-15);
}

TEST(ApplyQ, PerronVectorIsFixed) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(60, 0.05, rng);
    const auto u1 = perron_vector(g);
    EXPECT_NEAR(l2_norm(u1), 1.0, 1e-14);
    expect_vec_near(apply_Q(g, u1), u1, 1e-14);
  }
}

TEST(ApplyQ, Symmetric) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(35, 0.1, rng);
    std::vector<double> x(g.n()), y(g.n());
    for (auto& a : x) a = u(rng);
    for (auto& b : y) b = u(rng);
    EXPECT_NEAR(dot(apply_Q(g, x), y), dot(x, apply_Q(g, y)), 1e-13);
  }
}

TEST(ApplyQ, RequiresPositiveDegrees) {
  const auto g = build_graph(3, {{0, 1}});
  EXPECT_EQ(code_of([&] { apply_Q(g, std::vector<double>(3, 1.0)); }),
            ErrorCode::kZeroDegreeVertex);
  EXPECT_EQ(code_of([] { apply_P(path_graph(3), std::vector<double>(2, 1.0)); }),
            ErrorCode::kLengthMismatch);
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(is_connected(path_graph(3)));
  EXPECT_FALSE(is_connected(build_graph(2, {})));
  const auto triangles = build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_FALSE(is_connected(triangles));
  EXPECT_EQ(connected_components(triangles).second, 2u);
}

TEST(Connectivity, LargestComponentRelabels) {
  const auto g = build_graph(7, {{0, 5}, {2, 3}, {3, 6}, {6, 2}});
  const auto sub = largest_component(g);
  EXPECT_EQ(sub.vertices, (std::vector<Vertex>{2, 3, 6}));
  EXPECT_EQ(sub.graph.n(), 3u);
  EXPECT_EQ(sub.graph.num_edges(), 3u);
  EXPECT_TRUE(is_connected(sub.graph));
}

TEST(Stationary, Examples) {
  expect_vec_near(stationary_distribution(path_graph(3)).vector(), {0.25, 0.5, 0.25}, 0.0);
  expect_vec_near(stationary_distribution(complete_graph(4)).vector(),
                  std::vector<double>(4, 0.25), 0.0);
  expect_vec_near(stationary_distribution(star_graph(4)).vector(),
                  {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, 1e-16);
  EXPECT_EQ(code_of([] { stationary_distribution(build_graph(2, {})); }),
            ErrorCode::kDisconnectedGraph);
}

TEST(Stationary, IsFixedPointOfP) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(45, 0.08, rng);
    const auto pi = stationary_distribution(g);
    expect_vec_near(apply_P(g, pi.values()), pi.vector(), 1e-15);
  }
}

TEST(ProbabilityVectorTest, Validation) {
  EXPECT_EQ(code_of([] { ProbabilityVector({0.5, 0.6}); }), ErrorCode::kInvalidProbabilityVector);
  EXPECT_EQ(code_of([] { ProbabilityVector({1.5, -0.5}); }),
            ErrorCode::kInvalidProbabilityVector);
  EXPECT_EQ(code_of([] { ProbabilityVector(std::vector<double>{}); }),
            ErrorCode::kInvalidProbabilityVector);
  const auto v = ProbabilityVector::renormalized({0.5, 0.5 + 1e-10}, 1e-9);
  EXPECT_NEAR(pairwise_sum(v.values()), 1.0, 1e-16);
}

TEST(Io, EdgeListRoundTrip) {
  std::mt19937_64 rng(17);
  const auto g = random_connected_graph(25, 0.2, rng);
  std::stringstream buf;
  write_edge_list(buf, g);
  const auto h = read_edge_list(buf);
  EXPECT_EQ(h.n(), g.n());
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(Io, EdgeListErrors) {
  std::istringstream bad("0 1\n1 x\n");
  EXPECT_EQ(code_of([&] { read_edge_list(bad); }), ErrorCode::kParseError);
  std::istringstream loop("# comment\n2 2\n");
  EXPECT_EQ(code_of([&] { read_edge_list(loop); }), ErrorCode::kSelfLoop);
  std::istringstream trailing("0 1\n");
  EXPECT_EQ(read_edge_list(trailing, 4).n(), 4u);
}

TEST(Io, ShortestRoundTripDoubles) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Io, ProbabilityVectorImportTolerance) {
  std::istringstream ok("0.5\n0.5000000001\n");
  EXPECT_NEAR(read_probability_vector(ok)[0], 0.5 / 1.0000000001, 1e-16);
  std::istringstream off("0.5\n0.51\n");
  EXPECT_EQ(code_of([&] { read_probability_vector(off); }), ErrorCode::kInvalidProbabilityVector);
}

}  // namespace
}  // namespace prlab
