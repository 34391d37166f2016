#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rrsp {

using NodeId = std::int32_t;
using ArcId = std::int32_t;

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Ordered sequence of arc ids. Comparison is lexicographic on the ids, which
/// is the tie-break order used by every path-valued routine in the library.
struct Path {
  std::vector<ArcId> arcs;

  bool empty() const noexcept { return arcs.empty(); }
  std::size_t size() const noexcept { return arcs.size(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

struct PathValue {
  Path path;
  double value = 0.0;
};

/// Directed multigraph with dense node ids 0..n-1 and arc ids 0..m-1.
/// Immutable after construction; parallel arcs are distinct by id.
class Multidigraph {
 public:
  Multidigraph() = default;
  Multidigraph(std::int32_t node_count, std::vector<Arc> arcs, NodeId source,
               NodeId sink);

  std::int32_t node_count() const noexcept { return node_count_; }
  std::int32_t arc_count() const noexcept {
    return static_cast<std::int32_t>(arcs_.size());
  }
  NodeId source() const noexcept { return source_; }
  NodeId sink() const noexcept { return sink_; }

  const Arc& arc(ArcId id) const { return arcs_[static_cast<std::size_t>(id)]; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  /// Outgoing / incoming arc ids of a node, sorted by id.
  std::span<const ArcId> out_arcs(NodeId v) const;
  std::span<const ArcId> in_arcs(NodeId v) const;

  /// Optional display names (side table filled by parsers and generators).
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  void set_node_names(std::vector<std::string> names);
  std::string node_label(NodeId v) const;

 private:
  std::int32_t node_count_ = 0;
  std::vector<Arc> arcs_;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  std::vector<std::int32_t> out_offsets_;
  std::vector<ArcId> out_list_;
  std::vector<std::int32_t> in_offsets_;
  std::vector<ArcId> in_list_;
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Path helpers

/// True when `path` is a simple directed path from `from` to `to`.
bool is_simple_path(const Multidigraph& g, const Path& path, NodeId from, NodeId to);
inline bool is_st_path(const Multidigraph& g, const Path& path) {
  return is_simple_path(g, path, g.source(), g.sink());
}

/// Throws Error(Validation) unless `path` is a simple source-sink path.
void require_st_path(const Multidigraph& g, const Path& path);

double path_cost(const Path& path, std::span<const double> cost);

/// Node sequence visited by the path, starting at the tail of its first arc.
std::vector<NodeId> path_nodes(const Multidigraph& g, const Path& path);

std::string format_path(const Path& path);

// ---------------------------------------------------------------------------
// Structure

/// Kahn order; throws CycleDetected carrying a witness cycle.
std::vector<NodeId> topological_order(const Multidigraph& g);
std::optional<std::vector<NodeId>> try_topological_order(const Multidigraph& g);
bool is_acyclic(const Multidigraph& g);

/// Layer map h with h(head) = h(tail) + 1 for every arc, or nullopt.
/// Layers are normalized so the smallest value in each weakly connected
/// component is 0.
std::optional<std::vector<int>> layer_assignment(const Multidigraph& g);

struct DecompositionTree {
  enum class Label : std::uint8_t { Leaf, Series, Parallel };

  struct Node {
    Label label = Label::Leaf;
    std::int32_t left = -1;
    std::int32_t right = -1;
    ArcId arc = -1;  // leaves only
    NodeId source = 0;
    NodeId sink = 0;
    std::int32_t max_arcs = 1;  // longest source-sink path in the subgraph
  };

  /// Children always precede their parent, so index order is a valid
  /// bottom-up traversal.
  std::vector<Node> nodes;
  std::int32_t root = -1;

  std::size_t leaf_count() const;
};

/// Series/parallel reduction to a single source-sink arc. Throws
/// Error(NotSeriesParallel) when the graph is not two-terminal arc
/// series-parallel with terminals (source, sink).
DecompositionTree asp_decompose(const Multidigraph& g);
std::optional<DecompositionTree> try_asp_decompose(const Multidigraph& g);

enum class StructureKind { General, Acyclic, Layered, Asp };
std::string_view to_string(StructureKind kind) noexcept;

struct StructureClass {
  StructureKind kind = StructureKind::General;
  std::vector<int> layers;                 // when the graph is layered
  std::optional<DecompositionTree> tree;  // when the graph is ASP
  bool layered = false;
};

/// Most specific class under precedence Asp > Layered > Acyclic > General.
StructureClass classify(const Multidigraph& g);

/// Fewest arcs on any i->j path (kNoHops when unreachable); requires a DAG.
std::vector<std::vector<int>> min_hop_matrix(const Multidigraph& g);

// ---------------------------------------------------------------------------
// Shortest paths on acyclic graphs (costs may be negative)

/// Backward DP towards a fixed target; answers every source at once.
class ShortestPathsTo {
 public:
  ShortestPathsTo(const Multidigraph& g, std::span<const double> cost, NodeId target,
                  std::span<const NodeId> topo);

  double distance(NodeId from) const { return dist_[static_cast<std::size_t>(from)]; }
  /// Lexicographically smallest optimal path, or nullopt when unreachable.
  std::optional<Path> path_from(NodeId from) const;

 private:
  const Multidigraph* g_;
  std::span<const double> cost_;
  NodeId target_;
  std::vector<double> dist_;
};

std::optional<PathValue> shortest_path_dag(const Multidigraph& g,
                                           std::span<const double> cost, NodeId from,
                                           NodeId to);

/// All simple paths from source to sink in lexicographic arc-id order.
/// Works on cyclic graphs too. Throws TooManyPaths when more than `cap` exist.
std::vector<Path> enumerate_st_paths(const Multidigraph& g, std::size_t cap);

inline constexpr std::size_t kDefaultPathCap = 10000;

}  // namespace rrsp
