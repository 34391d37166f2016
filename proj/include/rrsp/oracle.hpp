#pragma once

#include <cstddef>

#include "rrsp/csp.hpp"
#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"
#include "rrsp/secondstage.hpp"

namespace rrsp {

// Exhaustive reference solvers. They enumerate simple source-sink paths, so
// they also accept graphs with cycles, and they refuse inputs with more than
// `cap` paths instead of truncating.

/// Minimum of C(X) + c-bar(Y) over all ordered pairs with Y in the
/// neighborhood of X; the lexicographically first optimal pair wins.
Solution oracle_recsp(const Instance& inst, std::size_t cap = kDefaultPathCap);

/// Minimum over X of F(X) for any uncertainty kind.
Solution oracle_recrob(const Instance& inst, std::size_t cap = kDefaultPathCap,
                       const EvaluateOptions& options = {});

/// Cheapest member of the neighborhood of `x` under `scenario`.
PathValue oracle_incremental(const Instance& inst, const Path& x, const Scenario& scenario,
                             std::size_t cap = kDefaultPathCap);

/// Throws Error(Infeasible) when no path fits the time limit.
PathValue oracle_csp(const CspInstance& inst, std::size_t cap = kDefaultPathCap);

}  // namespace rrsp
