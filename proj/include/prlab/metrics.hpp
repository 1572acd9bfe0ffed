#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "prlab/error.hpp"
#include "prlab/graph.hpp"
#include "prlab/numeric.hpp"

namespace prlab {

struct ErrorReport {
  /// Total variation distance, half the L1 distance.
  double tv = 0.0;
  double l1 = 0.0;
  /// max_i |pi_i - pibar_i| / pibar_i; absent when some pibar_i is zero.
  std::optional<double> max_rel;
  double l2 = 0.0;
};

inline ErrorReport error_report(std::span<const double> pi, std::span<const double> pibar) {
  if (pi.size() != pibar.size()) {
    throw Error(ErrorCode::kLengthMismatch, "error_report on vectors of different length");
  }
  ErrorReport r;
  r.l1 = l1_distance(pi, pibar);
  r.tv = 0.5 * r.l1;
  r.l2 = std::sqrt(pairwise_sum(0, pi.size(), [&](std::size_t i) {
    const double e = pi[i] - pibar[i];
    return e * e;
  }));
  bool defined = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pibar[i] > 0.0)) {
      defined = false;
      break;
    }
    worst = std::max(worst, std::abs(pi[i] - pibar[i]) / pibar[i]);
  }
  if (defined) r.max_rel = worst;
  return r;
}

inline ErrorReport error_report(const ProbabilityVector& pi, const ProbabilityVector& pibar) {
  return error_report(pi.values(), pibar.values());
}

/// Bound on sup over |f| <= 1 of |sum f pi - sum f pibar|.
inline double weak_convergence_bound(const ErrorReport& report) { return 2.0 * report.tv; }

}  // namespace prlab
