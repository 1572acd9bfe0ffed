#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "prlab/error.hpp"
#include "prlab/generators.hpp"
#include "prlab/graph.hpp"
#include "prlab/numeric.hpp"
#include "prlab/seed.hpp"

namespace prlab {

/// Spectral-norm estimate of a symmetric operator by power iteration.
struct NormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  /// ||M^2 x - rho x|| with rho = ||M x||^2 at the final unit iterate x.
  double residual = 0.0;
  bool converged = false;
};

struct SpectralReport {
  /// max(|lambda_2|, |lambda_n|) of Q, i.e. ||Q - u1 u1^T||_2.
  double lambda2_abs = 0.0;
  double gap = 1.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double degree_ratio = 0.0;
  /// max_i |d_i / w_i - 1| when an expected-degree vector is supplied.
  std::optional<double> concentration_stat;
};

struct PowerIterationConfig {
  double tol = 1e-9;
  std::size_t max_iter = 100'000;
};

namespace detail {

inline void project_out(std::span<double> x, std::span<const double> unit) {
  const double c = dot(x, unit);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

/// Power iteration for ||M||_2 of a symmetric M, optionally restricted to
/// the orthogonal complement of `deflate` (a unit vector M leaves invariant).
///
/// The estimate is ||M x_k|| for unit x_k, which converges to the largest
/// |eigenvalue| from below and is insensitive to +-lambda pairs. Stops when
/// its relative change stays below tol for 10 consecutive iterations.
inline NormEstimate power_norm(std::size_t n,
                               const std::function<void(std::span<const double>,
                                                        std::span<double>)>& apply,
                               std::span<const double> deflate, const PowerIterationConfig& cfg,
                               const Seed& seed) {
  NormEstimate out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  constexpr int kStreak = 10;
  constexpr int kRestarts = 8;
  std::vector<double> x(n), y(n);
  bool started = false;
  for (int attempt = 0; attempt < kRestarts && !started; ++attempt) {
    auto engine = make_engine(seed.derive(static_cast<std::uint64_t>(attempt)));
    for (auto& xi : x) xi = 2.0 * uniform01(engine) - 1.0;
    if (!deflate.empty()) {
      project_out(x, deflate);
      project_out(x, deflate);
    }
    started = l2_norm(x) >= 1e-8;
  }
  if (!started) {
    // The deflated space is (numerically) empty: nothing left to estimate.
    out.converged = true;
    return out;
  }
  const double x_norm = l2_norm(x);
  for (auto& xi : x) xi /= x_norm;

  auto step = [&](std::span<const double> in, std::span<double> result) {
    apply(in, result);
    if (!deflate.empty()) project_out(result, deflate);
  };

  double previous = -1.0;
  int streak = 0;
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    step(x, y);
    const double estimate = l2_norm(y);
    out.iterations = k;
    out.value = estimate;
    if (estimate == 0.0) {
      out.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / estimate;
    if (previous >= 0.0 && std::abs(estimate - previous) <= cfg.tol * estimate) {
      if (++streak >= kStreak) {
        out.converged = true;
        break;
      }
    } else {
      streak = 0;
    }
    previous = estimate;
  }

  std::vector<double> z(n);
  step(x, y);
  step(y, z);
  const double rho = dot(y, y);
  out.residual = std::sqrt(pairwise_sum(0, n, [&](std::size_t i) {
    const double r = z[i] - rho * x[i];
    return r * r;
  }));
  return out;
}

inline void require_connected(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
}

}  // namespace detail

/// max(|lambda_2|, |lambda_n|) of Q = D^{-1/2} A D^{-1/2}, as the norm of Q
/// deflated against the Perron vector u1 = D^{1/2} 1 / sqrt(vol). Iterates
/// are re-orthogonalized against u1 every step.
inline SpectralReport second_eigenvalue_magnitude(const Graph& g, double tol,
                                                  std::size_t max_iter, const Seed& seed) {
  detail::require_positive_degrees(g);
  detail::require_connected(g);
  const auto u1 = perron_vector(g);
  std::vector<double> scratch;
  const auto estimate = detail::power_norm(
      g.n(),
      [&](std::span<const double> x, std::span<double> y) { apply_Q_into(g, x, y, scratch); },
      u1, PowerIterationConfig{tol, max_iter}, seed);
  SpectralReport report;
  report.lambda2_abs = std::min(estimate.value, 1.0 + 1e-9);
  report.gap = 1.0 - report.lambda2_abs;
  report.iterations = estimate.iterations;
  report.residual = estimate.residual;
  report.converged = estimate.converged;
  report.degree_ratio = g.n() == 0 ? 0.0 : static_cast<double>(g.max_degree()) / g.min_degree();
  return report;
}

inline constexpr std::size_t kDenseSpectrumLimit = 512;

/// Dense Q as an Eigen matrix (test and oracle use only).
inline Eigen::MatrixXd dense_Q(const Graph& g) {
  detail::require_positive_degrees(g);
  const auto n = static_cast<Eigen::Index>(g.n());
  const auto inv_sqrt = g.inv_sqrt_degree();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Vertex j : g.neighbors(static_cast<std::size_t>(i))) {
      q(i, j) = inv_sqrt[static_cast<std::size_t>(i)] * inv_sqrt[j];
    }
  }
  return q;
}

struct DenseSpectrum {
  /// Eigenvalues of Q in decreasing order.
  std::vector<double> values;
  /// Column k is the unit eigenvector for values[k].
  Eigen::MatrixXd vectors;
};

/// Full eigendecomposition of the dense Q (Householder tridiagonalization
/// plus implicit symmetric QR). n <= 512.
inline DenseSpectrum dense_eigendecomposition(const Graph& g) {
  if (g.n() > kDenseSpectrumLimit) {
    throw Error(ErrorCode::kTooLargeForDense, "n = " + std::to_string(g.n()));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_Q(g));
  const auto n = static_cast<Eigen::Index>(g.n());
  DenseSpectrum out;
  out.values.resize(g.n());
  out.vectors.resize(n, n);
  // Eigen sorts ascending.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

inline std::vector<double> dense_spectrum_oracle(const Graph& g) {
  return dense_eigendecomposition(g).values;
}

/// max(|lambda_2|, |lambda_n|) from a decreasing eigenvalue sequence.
inline double second_magnitude(std::span<const double> decreasing) {
  if (decreasing.size() < 2) return 0.0;
  return std::max(std::abs(decreasing[1]), std::abs(decreasing.back()));
}

inline double degree_concentration_stat(const Graph& g, const WeightVector& w) {
  if (w.size() != g.n()) throw Error(ErrorCode::kLengthMismatch, "|w| != n");
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    worst = std::max(worst, std::abs(g.degree(i) / w[i] - 1.0));
  }
  return worst;
}

/// ||C||_2 for C = W^{-1/2} A W^{-1/2} - chi chi^T, chi_i = sqrt(w_i / sum w),
/// applied matrix-free as a sparse product plus a rank-one correction.
inline NormEstimate chung_lu_deviation_norm(const Graph& g, const WeightVector& w, double tol,
                                            std::size_t max_iter, const Seed& seed) {
  if (w.size() != g.n()) throw Error(ErrorCode::kLengthMismatch, "|w| != n");
  const std::size_t n = g.n();
  std::vector<double> inv_sqrt_w(n), chi(n), scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_sqrt_w[i] = 1.0 / std::sqrt(w[i]);
    chi[i] = std::sqrt(w[i] / w.sum());
  }
  auto apply = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t j = 0; j < n; ++j) scaled[j] = x[j] * inv_sqrt_w[j];
    const double c = dot(chi, x);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (Vertex j : g.neighbors(i)) s += scaled[j];
      y[i] = s * inv_sqrt_w[i] - c * chi[i];
    }
  };
  return detail::power_norm(n, apply, {}, PowerIterationConfig{tol, max_iter}, seed);
}

/// ||Q - Qbar||_2 with Qbar = W^{-1/2} Abar W^{-1/2} the rank-2 expected
/// operator of the SBM (Abar with diagonal p, W its column sums).
inline NormEstimate sbm_deviation_norm(const Graph& g, const SbmParams& params, double tol,
                                       std::size_t max_iter, const Seed& seed) {
  params.validate();
  if (params.n != g.n()) throw Error(ErrorCode::kLengthMismatch, "graph size != params.n");
  detail::require_positive_degrees(g);
  const std::size_t n = g.n();
  const std::size_t m = params.m;
  const double inv_sqrt_w1 = 1.0 / std::sqrt(params.w1());
  const double inv_sqrt_w2 = 1.0 / std::sqrt(params.w2());
  std::vector<double> scratch;
  auto apply = [&](std::span<const double> x, std::span<double> y) {
    apply_Q_into(g, x, y, scratch);
    const double s1 = inv_sqrt_w1 * pairwise_sum(0, m, [&](std::size_t i) { return x[i]; });
    const double s2 = inv_sqrt_w2 * pairwise_sum(m, n, [&](std::size_t i) { return x[i]; });
    const double on_c1 = inv_sqrt_w1 * (params.p * s1 + params.q * s2);
    const double on_c2 = inv_sqrt_w2 * (params.q * s1 + params.p * s2);
    for (std::size_t i = 0; i < n; ++i) y[i] -= i < m ? on_c1 : on_c2;
  };
  return detail::power_norm(n, apply, {}, PowerIterationConfig{tol, max_iter}, seed);
}

/// ||(Q - u1 u1^T) v'||_inf with v' = n D^{-1/2} v. Small values mean the
/// walk forgets v after one step, which element-wise convergence needs; a
/// unit preference vector keeps it large.
inline double qtilde_localization_stat(const Graph& g, const ProbabilityVector& v) {
  detail::require_positive_degrees(g);
  detail::require_length(g, v.size());
  const std::size_t n = g.n();
  const auto inv_sqrt = g.inv_sqrt_degree();
  std::vector<double> v_prime(n);
  for (std::size_t i = 0; i < n; ++i) v_prime[i] = static_cast<double>(n) * inv_sqrt[i] * v[i];
  std::vector<double> y(n), scratch;
  apply_Q_into(g, v_prime, y, scratch);
  const auto u1 = perron_vector(g);
  detail::project_out(y, u1);
  double worst = 0.0;
  for (double yi : y) worst = std::max(worst, std::abs(yi));
  return worst;
}

}  // namespace prlab
