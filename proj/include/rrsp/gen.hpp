#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"

namespace rrsp {

/// `layers` counts the terminal layers too, so layers = 3 with width 2 is a
/// diamond.
struct LayeredFamily {
  int layers = 3;
  int width = 2;
  double density = 1.0;
};

/// Nodes 0..n-1 in topological order with s = 0 and t = n - 1.
struct RandomDagFamily {
  int nodes = 6;
  double arc_probability = 0.4;
};

/// Grown from a single arc by splitting (series) or doubling (parallel) a
/// random arc until `leaves` arcs exist.
struct AspFamily {
  int leaves = 4;
  double series_bias = 0.5;
};

using Family = std::variant<LayeredFamily, RandomDagFamily, AspFamily>;

std::string family_name(const Family& f);

struct CostRange {
  double lo = 0.0;
  double hi = 10.0;
};

enum class BudgetKind { Interval, Discrete, Continuous };

/// Discrete: round(value * m) when `relative`, else round(value).
/// Continuous: value * D when `relative`, else value.
struct BudgetSpec {
  BudgetKind kind = BudgetKind::Interval;
  double value = 0.0;
  bool relative = false;
};

struct GenParams {
  Family family = LayeredFamily{};
  CostRange first_stage{0, 10};
  CostRange nominal{0, 10};
  CostRange deviation{0, 5};
  bool integral = true;  // draw whole numbers inside each range
  int k_min = 0;
  int k_max = 2;
  NeighborhoodKind neighborhood = NeighborhoodKind::Incl;
  BudgetSpec budget{};
  std::uint64_t seed = 1;
  int max_attempts = 16;
};

/// Throws Error(Validation) for malformed parameters and Error(Capacity)
/// when no attempt satisfies the family promise.
Instance generate(const GenParams& params);

// ---------------------------------------------------------------------------
// Vertex-disjoint paths and gadgets

struct KVdpInstance {
  std::int32_t node_count = 0;
  std::vector<Arc> arcs;
  std::vector<std::pair<NodeId, NodeId>> terminals;  // (s_i, t_i)
};

/// Throws Error(Validation) unless K >= 1, all terminals are distinct nodes
/// and every arc endpoint exists.
void validate_kvdp(const KVdpInstance& kv);

/// Exhaustive backtracking over simple paths.
bool disjoint_paths_exist(const KVdpInstance& kv);

/// Random digraph on `nodes` nodes without self-loops, each ordered pair
/// present with probability `arc_probability`, and `pairs` terminal pairs.
KVdpInstance random_kvdp(int nodes, int pairs, double arc_probability, std::uint64_t seed);

/// The path H = (s_1,t_1),(t_1,s_2),...,(s_K,t_K); its arcs come after the
/// arcs of G, so H occupies ids m_G .. m_G + 2K - 2.
Path gadget_path(const KVdpInstance& kv);

/// (s_i,t_i): C=1, c-bar=0; connectors 0/0; arcs of G: C=0, c-bar=1.
/// k = K, inclusion neighborhood, interval uncertainty.
Instance gadget_recsp_incl(const KVdpInstance& kv);

struct IncrementalGadget {
  Instance instance;
  Path first_stage;  // H
};

/// c-bar(s_i,t_i) = 1, every other cost 0, k = K, exclusion neighborhood.
IncrementalGadget gadget_incsp_excl(const KVdpInstance& kv);

/// (s_i,t_i) and arcs of G: C=0, c-hat=0, Delta=1; connectors all 0.
/// k = 1, inclusion neighborhood, discrete budget 1.
Instance gadget_recrob_discrete(const KVdpInstance& kv);

}  // namespace rrsp
