#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace prlab {

/// Pairwise (tree) summation. Error grows as O(log n) ulps and the reduction
/// order depends only on the length, so results are reproducible.
template <class F>
double pairwise_sum(std::size_t first, std::size_t last, const F& term) {
  constexpr std::size_t kLeaf = 16;
  if (last - first <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = first + (last - first) / 2;
  return pairwise_sum(first, mid, term) + pairwise_sum(mid, last, term);
}

inline double pairwise_sum(std::span<const double> x) {
  return pairwise_sum(0, x.size(), [&](std::size_t i) { return x[i]; });
}

inline double l1_norm(std::span<const double> x) {
  return pairwise_sum(0, x.size(), [&](std::size_t i) { return std::abs(x[i]); });
}

inline double l2_norm(std::span<const double> x) {
  return std::sqrt(pairwise_sum(0, x.size(), [&](std::size_t i) { return x[i] * x[i]; }));
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return pairwise_sum(0, x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

inline double l1_distance(std::span<const double> x, std::span<const double> y) {
  return pairwise_sum(0, x.size(), [&](std::size_t i) { return std::abs(x[i] - y[i]); });
}

}  // namespace prlab
