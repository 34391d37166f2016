#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "rrsp/csp.hpp"
#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"
#include "rrsp/recsolve.hpp"
#include "rrsp/secondstage.hpp"

namespace rrsp {

namespace {

struct DetourArc {
  NodeId from = 0;
  double cost = 0.0;
  int time = 0;
  int first_hops = kNoHops;
  int second_hops = kNoHops;
};

class ReductionBuilder {
 public:
  explicit ReductionBuilder(const Instance& inst) : inst_(inst) {}

  // One arc per (tail, head) pair: the cheapest C + c-bar among parallel arcs.
  void add_shared_arcs() {
    const auto upper = inst_.upper_costs();
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (ArcId e = 0; e < inst_.graph.arc_count(); ++e) {
      const Arc& a = inst_.graph.arc(e);
      const double c = inst_.first_stage[static_cast<std::size_t>(e)] +
                       upper[static_cast<std::size_t>(e)];
      const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a.tail)) << 32) |
                       static_cast<std::uint32_t>(a.head);
      auto [it, fresh] = slot.try_emplace(key, out_.cost.size());
      if (fresh) {
        push(a, c, 0, Provenance{Provenance::Kind::BothStages, e, a.tail, a.head, 1, 1});
      } else if (c < out_.cost[it->second]) {
        out_.cost[it->second] = c;
        out_.provenance[it->second].arc = e;
      }
    }
  }

  void add_detours(NodeId to, const std::vector<DetourArc>& detours) {
    for (const DetourArc& d : detours)
      push(Arc{d.from, to}, d.cost, d.time,
           Provenance{Provenance::Kind::Detour, -1, d.from, to, d.first_hops, d.second_hops});
  }

  ReductionGraph finish(int limit) {
    out_.graph = Multidigraph(inst_.graph.node_count(), std::move(arcs_), inst_.graph.source(),
                              inst_.graph.sink());
    out_.limit = limit;
    return std::move(out_);
  }

 private:
  void push(Arc a, double cost, int time, Provenance p) {
    arcs_.push_back(a);
    out_.cost.push_back(cost);
    out_.time.push_back(time);
    out_.provenance.push_back(p);
  }

  const Instance& inst_;
  std::vector<Arc> arcs_;
  ReductionGraph out_;
};

int normalized_incl_k(const Instance& inst) {
  return inst.neighborhood == NeighborhoodKind::Sym ? inst.k / 2 : inst.k;
}

// Cheapest i->j path with at most `hops` arcs (kNoHops = any length).
Path subpath(const Multidigraph& g, std::span<const double> cost, NodeId from, NodeId to,
             int hops, std::span<const NodeId> topo) {
  std::optional<Path> p;
  if (hops == kNoHops) {
    p = ShortestPathsTo(g, cost, to, topo).path_from(from);
  } else {
    const std::vector<int> unit(static_cast<std::size_t>(g.arc_count()), 1);
    p = ConstrainedPathsTo(g, cost, unit, to, hops, topo).path(from, hops);
  }
  if (!p) throw Error(ErrorKind::Infeasible, "reduction arc has no underlying path");
  return std::move(*p);
}

template <typename PerTarget>
std::vector<std::vector<DetourArc>> for_each_target(NodeId n, bool parallel, PerTarget work) {
  std::vector<std::vector<DetourArc>> result(static_cast<std::size_t>(n));
  const unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers <= 1) {
    for (NodeId j = 0; j < n; ++j) result[static_cast<std::size_t>(j)] = work(j);
    return result;
  }
  std::atomic<NodeId> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (NodeId j = next++; j < n; j = next++) result[static_cast<std::size_t>(j)] = work(j);
    });
  }
  for (auto& t : pool) t.join();
  return result;
}

Solution splice(const Instance& inst, const ReductionGraph& red, const Path& derived,
                std::span<const NodeId> topo, std::string solver) {
  const auto upper = inst.upper_costs();
  Solution sol;
  for (ArcId d : derived.arcs) {
    const Provenance& p = red.provenance[static_cast<std::size_t>(d)];
    if (p.kind == Provenance::Kind::BothStages) {
      sol.first_stage.arcs.push_back(p.arc);
      sol.second_stage.arcs.push_back(p.arc);
      continue;
    }
    const Path x = subpath(inst.graph, inst.first_stage, p.from, p.to, p.first_hops, topo);
    const Path y = subpath(inst.graph, upper, p.from, p.to, p.second_hops, topo);
    sol.first_stage.arcs.insert(sol.first_stage.arcs.end(), x.arcs.begin(), x.arcs.end());
    sol.second_stage.arcs.insert(sol.second_stage.arcs.end(), y.arcs.begin(), y.arcs.end());
  }
  sol.value = interval_pair_value(inst, sol.first_stage, sol.second_stage);
  sol.solver = std::move(solver);
  sol.witness = upper_bound_scenario(inst);
  return sol;
}

Solution solve_reduction(const Instance& inst, const ReductionGraph& red, std::string solver) {
  const auto topo = topological_order(inst.graph);
  ConstrainedPathsTo table(red.graph, red.cost, red.time, red.graph.sink(), red.limit, topo);
  auto derived = table.path(red.graph.source(), red.limit);
  if (!derived) throw Error(ErrorKind::Infeasible, "sink unreachable");
  return splice(inst, red, *derived, topo, std::move(solver));
}

void require_interval(const Instance& inst) {
  if (!is_interval(inst.uncertainty))
    throw Error(ErrorKind::Validation,
                "exact solvers handle interval uncertainty only; use approx or the MIP export");
}

}  // namespace

ReductionGraph build_layered_reduction(const Instance& inst) {
  require_valid(inst);
  const auto layers = layer_assignment(inst.graph);
  if (!layers || !is_acyclic(inst.graph))
    throw Error(ErrorKind::UnsupportedStructure, "graph is not layered");
  const auto& h = *layers;
  const int k = std::min(normalized_incl_k(inst), inst.graph.node_count());
  const auto topo = topological_order(inst.graph);
  const auto upper = inst.upper_costs();

  ReductionBuilder builder(inst);
  builder.add_shared_arcs();
  const NodeId n = inst.graph.node_count();
  for (NodeId j = 0; j < n; ++j) {
    if (k == 0) break;
    ShortestPathsTo first(inst.graph, inst.first_stage, j, topo);
    ShortestPathsTo second(inst.graph, upper, j, topo);
    std::vector<DetourArc> detours;
    for (NodeId i = 0; i < n; ++i) {
      const int gap = h[static_cast<std::size_t>(j)] - h[static_cast<std::size_t>(i)];
      if (gap < 1 || gap > k || first.distance(i) == kInf) continue;
      const Path x = *first.path_from(i);
      const Path y = *second.path_from(i);
      detours.push_back(DetourArc{i, first.distance(i) + second.distance(i),
                                  count_missing(y, x), kNoHops, kNoHops});
    }
    builder.add_detours(j, detours);
  }
  return builder.finish(k);
}

ReductionGraph build_acyclic_reduction(const Instance& inst, bool parallel) {
  require_valid(inst);
  if (!is_acyclic(inst.graph))
    throw Error(ErrorKind::UnsupportedStructure, "graph has a directed cycle");
  const int k = std::min(inst.k, 2 * inst.graph.node_count());
  const auto topo = topological_order(inst.graph);
  const auto upper = inst.upper_costs();
  const Multidigraph& g = inst.graph;
  const std::vector<int> unit(static_cast<std::size_t>(g.arc_count()), 1);
  const NodeId n = g.node_count();
  const NeighborhoodKind kind = inst.neighborhood;

  auto work = [&](NodeId j) {
    std::vector<DetourArc> detours;
    if (k == 0) return detours;
    if (kind == NeighborhoodKind::Incl || kind == NeighborhoodKind::Excl) {
      const bool incl = kind == NeighborhoodKind::Incl;
      // The free side is unconstrained, the counted side is hop-limited.
      ShortestPathsTo free(g, incl ? std::span<const double>(inst.first_stage) : upper, j, topo);
      ConstrainedPathsTo counted(g, incl ? std::span<const double>(upper) : inst.first_stage,
                                 unit, j, k, topo);
      for (NodeId i = 0; i < n; ++i) {
        if (i == j || free.distance(i) == kInf) continue;
        double previous = kInf;
        for (int l = 1; l <= k; ++l) {
          const double v = counted.value(i, l);
          if (!(v < previous)) continue;
          previous = v;
          detours.push_back(DetourArc{i, free.distance(i) + v, l, incl ? kNoHops : l,
                                      incl ? l : kNoHops});
        }
      }
      return detours;
    }
    ConstrainedPathsTo first(g, inst.first_stage, unit, j, k, topo);
    ConstrainedPathsTo second(g, upper, unit, j, k, topo);
    for (NodeId i = 0; i < n; ++i) {
      if (i == j) continue;
      double prev_u = kInf;
      for (int u = 1; u < k; ++u) {
        const double cu = first.value(i, u);
        if (!(cu < prev_u)) continue;
        prev_u = cu;
        double prev_v = kInf;
        for (int v = 1; u + v <= k; ++v) {
          const double cv = second.value(i, v);
          if (!(cv < prev_v)) continue;
          prev_v = cv;
          detours.push_back(DetourArc{i, cu + cv, u + v, u, v});
        }
      }
    }
    return detours;
  };

  ReductionBuilder builder(inst);
  builder.add_shared_arcs();
  const auto per_target = for_each_target(n, parallel, work);
  for (NodeId j = 0; j < n; ++j) builder.add_detours(j, per_target[static_cast<std::size_t>(j)]);
  return builder.finish(k);
}

Solution solve_minmax_k0(const Instance& inst) {
  require_valid(inst);
  require_interval(inst);
  if (!is_acyclic(inst.graph))
    throw Error(ErrorKind::UnsupportedStructure, "graph has a directed cycle");
  std::vector<double> merged = inst.upper_costs();
  for (std::size_t e = 0; e < merged.size(); ++e) merged[e] += inst.first_stage[e];
  auto best = shortest_path_dag(inst.graph, merged, inst.graph.source(), inst.graph.sink());
  if (!best) throw Error(ErrorKind::Infeasible, "sink unreachable");
  Solution sol;
  sol.first_stage = best->path;
  sol.second_stage = best->path;
  sol.value = interval_pair_value(inst, sol.first_stage, sol.second_stage);
  sol.solver = "minmax";
  sol.witness = upper_bound_scenario(inst);
  return sol;
}

Solution solve_layered(const Instance& inst) {
  require_interval(inst);
  return solve_reduction(inst, build_layered_reduction(inst), "layered");
}

Solution solve_acyclic(const Instance& inst, bool parallel) {
  require_interval(inst);
  return solve_reduction(inst, build_acyclic_reduction(inst, parallel), "acyclic");
}

}  // namespace rrsp
