#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"

namespace rrsp {

enum class Method { Auto, MinMax, Layered, Acyclic, Asp, Oracle };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text);

struct SolveOptions {
  Method method = Method::Auto;
  /// Build reduction arcs for different targets on worker threads.
  bool parallel = false;
  std::size_t oracle_cap = kDefaultPathCap;
};

/// Where a reduction arc came from. Detours keep the hop limits used for
/// their two subpaths (kNoHops = unconstrained); the subpaths themselves are
/// recomputed when a solution is spliced back, with the same tie-break.
struct Provenance {
  enum class Kind : std::uint8_t { BothStages, Detour };
  Kind kind = Kind::BothStages;
  ArcId arc = -1;  // BothStages
  NodeId from = 0;
  NodeId to = 0;
  int first_hops = 0;
  int second_hops = 0;
};

struct ReductionGraph {
  Multidigraph graph;  // same node set as the instance graph
  std::vector<double> cost;
  std::vector<int> time;
  std::vector<Provenance> provenance;
  int limit = 0;
};

/// Reduction for layered graphs; Excl and Sym are first normalized to Incl.
ReductionGraph build_layered_reduction(const Instance& inst);
/// Reduction for acyclic graphs, one construction per neighborhood kind.
ReductionGraph build_acyclic_reduction(const Instance& inst, bool parallel = false);

/// Interval-uncertainty entry point; budgeted instances are rejected.
Solution solve(const Instance& inst, const SolveOptions& options = {});

Solution solve_minmax_k0(const Instance& inst);
Solution solve_layered(const Instance& inst);
Solution solve_acyclic(const Instance& inst, bool parallel = false);
Solution solve_asp(const Instance& inst);

}  // namespace rrsp
