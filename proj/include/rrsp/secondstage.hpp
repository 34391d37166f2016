#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"

namespace rrsp {

/// Cheapest Y in the neighborhood of `x` under a fixed scenario. Requires an
/// acyclic graph. The DP tracks one signed counter per state: arcs outside x
/// consume budget (Incl, Sym) and arcs of x refund it (Excl, Sym) against a
/// starting balance of k - |x|.
PathValue solve_incremental(const Instance& inst, const Path& x, const Scenario& scenario);

/// Every member of the neighborhood of `x`, in lexicographic order.
/// Throws TooManyPaths when more than `cap` exist.
std::vector<Path> enumerate_neighborhood(const Instance& inst, const Path& x,
                                         std::size_t cap = kDefaultPathCap);

struct Evaluation {
  double value = 0.0;  // F(X)
  Path recovery;
  Scenario witness;
  std::string method;  // "dp", "enumeration+lp" or "enumeration+subsets"
};

/// Interval uncertainty: the adversary plays the upper bound scenario.
Evaluation adversarial_interval(const Instance& inst, const Path& x);

struct EvaluateOptions {
  std::size_t path_cap = kDefaultPathCap;
  /// Upper limit on deviation subsets tried by the discrete adversary.
  std::size_t subset_cap = 5'000'000;
};

/// F(X) = C(X) + max over scenarios of the incremental optimum.
Evaluation evaluate_objective(const Instance& inst, const Path& x,
                              const EvaluateOptions& options = {});

/// Same evaluation with the recovery set supplied by the caller (for
/// example a filtered path enumeration on a graph with cycles).
Evaluation evaluate_with_recoveries(const Instance& inst, const Path& x,
                                    const std::vector<Path>& recoveries,
                                    const EvaluateOptions& options = {});

}  // namespace rrsp
