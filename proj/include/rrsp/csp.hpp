#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rrsp/graph.hpp"

namespace rrsp {

struct CspInstance {
  Multidigraph graph;
  std::vector<double> cost;
  std::vector<int> time;  // nonnegative integers
  int limit = 0;
};

void validate_csp(const CspInstance& inst);

/// Backward table best[v][b]: cheapest v->target path with total time <= b.
/// Requires an acyclic graph; `topo` is a topological order of it.
class ConstrainedPathsTo {
 public:
  ConstrainedPathsTo(const Multidigraph& g, std::span<const double> cost,
                     std::span<const int> time, NodeId target, int limit,
                     std::span<const NodeId> topo);

  int limit() const noexcept { return limit_; }
  double value(NodeId from, int budget) const {
    return table_[index(from, budget)];
  }
  /// Lexicographically smallest optimal path within the budget.
  std::optional<Path> path(NodeId from, int budget) const;

 private:
  std::size_t index(NodeId v, int b) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(limit_ + 1) +
           static_cast<std::size_t>(b);
  }

  const Multidigraph* g_;
  std::span<const double> cost_;
  std::span<const int> time_;
  NodeId target_;
  int limit_;
  std::vector<double> table_;
};

/// Throws Error(Infeasible) when no source-sink path fits the time limit.
PathValue solve_csp(const CspInstance& inst);
std::optional<PathValue> try_solve_csp(const CspInstance& inst);

/// Cheapest from->to path with at most `max_arcs` arcs; throws Error(Infeasible).
PathValue solve_hop_constrained(const Multidigraph& g, std::span<const double> cost,
                                NodeId from, NodeId to, int max_arcs);

}  // namespace rrsp
