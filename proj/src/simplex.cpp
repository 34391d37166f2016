#include "rrsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrsp/error.hpp"

namespace rrsp {

// Dictionary form: basic[i] = b[i] - sum_j d[i][j] * nonbasic[j],
// z = v + sum_j c[j] * nonbasic[j]. Only nonbasic columns are stored, so the
// slack variables never widen the table. Labels 0..n-1 are structural,
// n..n+rows-1 are slacks; Bland's rule compares labels.
LpResult maximize_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c, double tol) {
  const std::size_t rows = b.size();
  const std::size_t n = c.size();
  if (a.size() != rows) throw Error(ErrorKind::Validation, "LP row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != n) throw Error(ErrorKind::Validation, "LP column count mismatch");
    if (b[i] < 0) throw Error(ErrorKind::Validation, "LP right-hand side must be nonnegative");
  }

  std::vector<double> d(rows * n);
  for (std::size_t i = 0; i < rows; ++i) std::copy(a[i].begin(), a[i].end(), d.begin() + static_cast<std::ptrdiff_t>(i * n));
  std::vector<double> rhs = b;
  std::vector<double> cost = c;
  double value = 0.0;
  std::vector<std::size_t> nonbasic(n);
  std::vector<std::size_t> basic(rows);
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
  for (std::size_t i = 0; i < rows; ++i) basic[i] = n + i;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return d[i * n + j]; };

  for (;;) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j] > tol && (enter == n || nonbasic[j] < nonbasic[enter])) enter = j;
    }
    if (enter == n) break;

    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double coef = at(i, enter);
      if (coef <= tol) continue;
      const double ratio = rhs[i] / coef;
      if (ratio < best - tol ||
          (ratio <= best + tol && (leave == rows || basic[i] < basic[leave]))) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave == rows)
      return LpResult{LpStatus::Unbounded, std::numeric_limits<double>::infinity(), {}};

    const double inv = 1.0 / at(leave, enter);
    double* prow = &at(leave, 0);
    for (std::size_t j = 0; j < n; ++j)
      prow[j] = (j == enter) ? inv : prow[j] * inv;
    rhs[leave] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      double* row = &at(i, 0);
      const double f = row[enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        row[j] = (j == enter) ? -f * prow[j] : row[j] - f * prow[j];
      rhs[i] = std::max(0.0, rhs[i] - f * rhs[leave]);
    }
    const double f = cost[enter];
    for (std::size_t j = 0; j < n; ++j)
      cost[j] = (j == enter) ? -f * prow[j] : cost[j] - f * prow[j];
    value += f * rhs[leave];
    std::swap(basic[leave], nonbasic[enter]);
  }

  LpResult result;
  result.value = value;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basic[i] < n) result.x[basic[i]] = rhs[i];
  return result;
}

}  // namespace rrsp
