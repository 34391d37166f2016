#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace rrsp {

/// Cost sentinel for "no such path". IEEE infinity saturates under addition
/// with any finite cost, which is all the DP code relies on.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hop-count sentinel for unreachable node pairs.
inline constexpr int kNoHops = std::numeric_limits<int>::max();

inline constexpr double kAbsTol = 1e-9;
inline constexpr double kRelTol = 1e-6;

inline bool is_finite_cost(double value) noexcept { return value < kInf; }

inline int saturating_add(int a, int b) noexcept {
  if (a == kNoHops || b == kNoHops) return kNoHops;
  return a + b;
}

/// Agreement test used when comparing values produced by different solvers.
inline bool approx_equal(double a, double b, double abs_tol = kAbsTol,
                         double rel_tol = kRelTol) noexcept {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= abs_tol + rel_tol * scale;
}

inline bool approx_le(double a, double b, double abs_tol = kAbsTol,
                      double rel_tol = kRelTol) noexcept {
  return a <= b || approx_equal(a, b, abs_tol, rel_tol);
}

}  // namespace rrsp
