#include "rrsp/csp.hpp"

#include <algorithm>
#include <string>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"

namespace rrsp {

void validate_csp(const CspInstance& inst) {
  const auto m = static_cast<std::size_t>(inst.graph.arc_count());
  if (inst.cost.size() != m || inst.time.size() != m)
    throw Error(ErrorKind::Validation, "cost and time vectors must have one entry per arc");
  if (inst.limit < 0) throw Error(ErrorKind::Validation, "time limit must be nonnegative");
  for (std::size_t e = 0; e < m; ++e) {
    if (inst.time[e] < 0)
      throw Error(ErrorKind::Validation,
                  "arc " + std::to_string(e) + " has a negative transition time");
  }
}

ConstrainedPathsTo::ConstrainedPathsTo(const Multidigraph& g, std::span<const double> cost,
                                       std::span<const int> time, NodeId target, int limit,
                                       std::span<const NodeId> topo)
    : g_(&g), cost_(cost), time_(time), target_(target), limit_(limit),
      table_(static_cast<std::size_t>(g.node_count()) * static_cast<std::size_t>(limit + 1),
             kInf) {
  for (int b = 0; b <= limit_; ++b) table_[index(target_, b)] = 0.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    if (v == target_) continue;
    double* row = &table_[index(v, 0)];
    for (ArcId e : g.out_arcs(v)) {
      const int te = time_[static_cast<std::size_t>(e)];
      if (te > limit_) continue;
      const double ce = cost_[static_cast<std::size_t>(e)];
      const double* next = &table_[index(g.arc(e).head, 0)];
      for (int b = te; b <= limit_; ++b) {
        const double rest = next[b - te];
        if (rest == kInf) continue;
        row[b] = std::min(row[b], ce + rest);
      }
    }
  }
}

std::optional<Path> ConstrainedPathsTo::path(NodeId from, int budget) const {
  if (value(from, budget) == kInf) return std::nullopt;
  Path out;
  NodeId at = from;
  int left = budget;
  while (at != target_) {
    const double want = value(at, left);
    bool moved = false;
    for (ArcId e : g_->out_arcs(at)) {
      const int te = time_[static_cast<std::size_t>(e)];
      if (te > left) continue;
      const double rest = value(g_->arc(e).head, left - te);
      if (rest != kInf && cost_[static_cast<std::size_t>(e)] + rest == want) {
        out.arcs.push_back(e);
        at = g_->arc(e).head;
        left -= te;
        moved = true;
        break;
      }
    }
    if (!moved) throw Error(ErrorKind::Infeasible, "constrained path reconstruction failed");
  }
  return out;
}

std::optional<PathValue> try_solve_csp(const CspInstance& inst) {
  validate_csp(inst);
  const auto topo = topological_order(inst.graph);
  const NodeId s = inst.graph.source();
  ConstrainedPathsTo table(inst.graph, inst.cost, inst.time, inst.graph.sink(), inst.limit,
                           topo);
  auto path = table.path(s, inst.limit);
  if (!path) return std::nullopt;
  return PathValue{std::move(*path), table.value(s, inst.limit)};
}

PathValue solve_csp(const CspInstance& inst) {
  auto result = try_solve_csp(inst);
  if (!result)
    throw Error(ErrorKind::Infeasible,
                "no source-sink path within time limit " + std::to_string(inst.limit));
  return std::move(*result);
}

PathValue solve_hop_constrained(const Multidigraph& g, std::span<const double> cost,
                                NodeId from, NodeId to, int max_arcs) {
  if (max_arcs < 0) throw Error(ErrorKind::Validation, "hop limit must be nonnegative");
  const auto topo = topological_order(g);
  const std::vector<int> unit(static_cast<std::size_t>(g.arc_count()), 1);
  ConstrainedPathsTo table(g, cost, unit, to, max_arcs, topo);
  auto path = table.path(from, max_arcs);
  if (!path)
    throw Error(ErrorKind::Infeasible,
                "no path with at most " + std::to_string(max_arcs) + " arcs");
  return PathValue{std::move(*path), table.value(from, max_arcs)};
}

}  // namespace rrsp
