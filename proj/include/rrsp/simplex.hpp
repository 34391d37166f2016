#pragma once

#include <vector>

namespace rrsp {

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense primal simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
/// so the slack basis is feasible from the start. Bland's rule prevents
/// cycling. `a` is row-major with rows.size() == b.size().
LpResult maximize_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c, double tol = 1e-9);

}  // namespace rrsp
