#include "rrsp/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"

namespace rrsp {

Multidigraph::Multidigraph(std::int32_t node_count, std::vector<Arc> arcs, NodeId source,
                           NodeId sink)
    : node_count_(node_count), arcs_(std::move(arcs)), source_(source), sink_(sink) {
  if (node_count_ < 2) throw Error(ErrorKind::Validation, "graph needs at least two nodes");
  auto valid = [&](NodeId v) { return v >= 0 && v < node_count_; };
  if (!valid(source_) || !valid(sink_))
    throw Error(ErrorKind::Validation, "source or sink is not a node of the graph");
  if (source_ == sink_) throw Error(ErrorKind::Validation, "source and sink coincide");
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    if (!valid(arcs_[e].tail) || !valid(arcs_[e].head))
      throw Error(ErrorKind::Validation,
                  "arc " + std::to_string(e) + " has an endpoint outside the node range");
  }

  const auto n = static_cast<std::size_t>(node_count_);
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offsets_[static_cast<std::size_t>(a.tail) + 1];
    ++in_offsets_[static_cast<std::size_t>(a.head) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_list_.resize(arcs_.size());
  in_list_.resize(arcs_.size());
  std::vector<std::int32_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::int32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // Filling in id order keeps every adjacency slice sorted by arc id.
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    const Arc& a = arcs_[e];
    out_list_[static_cast<std::size_t>(out_fill[static_cast<std::size_t>(a.tail)]++)] =
        static_cast<ArcId>(e);
    in_list_[static_cast<std::size_t>(in_fill[static_cast<std::size_t>(a.head)]++)] =
        static_cast<ArcId>(e);
  }
}

std::span<const ArcId> Multidigraph::out_arcs(NodeId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const ArcId>(out_list_).subspan(
      static_cast<std::size_t>(out_offsets_[i]),
      static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i]));
}

std::span<const ArcId> Multidigraph::in_arcs(NodeId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const ArcId>(in_list_).subspan(
      static_cast<std::size_t>(in_offsets_[i]),
      static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i]));
}

void Multidigraph::set_node_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != static_cast<std::size_t>(node_count_))
    throw Error(ErrorKind::Validation, "node name table has the wrong length");
  names_ = std::move(names);
}

std::string Multidigraph::node_label(NodeId v) const {
  if (!names_.empty()) return names_[static_cast<std::size_t>(v)];
  return std::to_string(v);
}

bool is_simple_path(const Multidigraph& g, const Path& path, NodeId from, NodeId to) {
  if (path.empty()) return from == to;
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  NodeId at = from;
  seen[static_cast<std::size_t>(at)] = 1;
  for (ArcId e : path.arcs) {
    if (e < 0 || e >= g.arc_count()) return false;
    const Arc& a = g.arc(e);
    if (a.tail != at) return false;
    at = a.head;
    if (seen[static_cast<std::size_t>(at)]) return false;
    seen[static_cast<std::size_t>(at)] = 1;
  }
  return at == to;
}

void require_st_path(const Multidigraph& g, const Path& path) {
  if (!is_st_path(g, path))
    throw Error(ErrorKind::Validation,
                "not a simple source-sink path: " + format_path(path));
}

double path_cost(const Path& path, std::span<const double> cost) {
  double total = 0.0;
  for (ArcId e : path.arcs) total += cost[static_cast<std::size_t>(e)];
  return total;
}

std::vector<NodeId> path_nodes(const Multidigraph& g, const Path& path) {
  std::vector<NodeId> nodes;
  if (path.empty()) return nodes;
  nodes.reserve(path.size() + 1);
  nodes.push_back(g.arc(path.arcs.front()).tail);
  for (ArcId e : path.arcs) nodes.push_back(g.arc(e).head);
  return nodes;
}

std::string format_path(const Path& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.arcs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path.arcs[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------

std::optional<std::vector<NodeId>> try_topological_order(const Multidigraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::int32_t> indeg(n, 0);
  for (const Arc& a : g.arcs()) ++indeg[static_cast<std::size_t>(a.head)];
  std::deque<NodeId> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(static_cast<NodeId>(v));
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (ArcId e : g.out_arcs(v)) {
      const auto h = static_cast<std::size_t>(g.arc(e).head);
      if (--indeg[h] == 0) ready.push_back(static_cast<NodeId>(h));
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<NodeId> topological_order(const Multidigraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::int32_t> indeg(n, 0);
  for (const Arc& a : g.arcs()) ++indeg[static_cast<std::size_t>(a.head)];
  std::deque<NodeId> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(static_cast<NodeId>(v));
  std::vector<NodeId> order;
  std::vector<char> placed(n, 0);
  while (!ready.empty()) {
    const NodeId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    placed[static_cast<std::size_t>(v)] = 1;
    for (ArcId e : g.out_arcs(v)) {
      const auto h = static_cast<std::size_t>(g.arc(e).head);
      if (--indeg[h] == 0) ready.push_back(static_cast<NodeId>(h));
    }
  }
  if (order.size() == n) return order;

  // Every unplaced node keeps an unplaced predecessor, so walking backwards
  // must eventually repeat a node.
  NodeId start = 0;
  while (placed[static_cast<std::size_t>(start)]) ++start;
  std::vector<std::int32_t> position(n, -1);
  std::vector<NodeId> walk;
  NodeId v = start;
  while (position[static_cast<std::size_t>(v)] < 0) {
    position[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(walk.size());
    walk.push_back(v);
    for (ArcId e : g.in_arcs(v)) {
      const NodeId t = g.arc(e).tail;
      if (!placed[static_cast<std::size_t>(t)]) {
        v = t;
        break;
      }
    }
  }
  std::vector<int> cycle(walk.begin() + position[static_cast<std::size_t>(v)], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  throw CycleDetected(std::move(cycle));
}

bool is_acyclic(const Multidigraph& g) { return try_topological_order(g).has_value(); }

std::optional<std::vector<int>> layer_assignment(const Multidigraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  constexpr int kUnset = std::numeric_limits<int>::min();
  std::vector<int> h(n, kUnset);
  std::vector<NodeId> component;
  for (std::size_t root = 0; root < n; ++root) {
    if (h[root] != kUnset) continue;
    component.clear();
    h[root] = 0;
    component.push_back(static_cast<NodeId>(root));
    for (std::size_t head = 0; head < component.size(); ++head) {
      const NodeId v = component[head];
      const int hv = h[static_cast<std::size_t>(v)];
      auto visit = [&](NodeId w, int want) {
        int& hw = h[static_cast<std::size_t>(w)];
        if (hw == kUnset) {
          hw = want;
          component.push_back(w);
          return true;
        }
        return hw == want;
      };
      for (ArcId e : g.out_arcs(v))
        if (!visit(g.arc(e).head, hv + 1)) return std::nullopt;
      for (ArcId e : g.in_arcs(v))
        if (!visit(g.arc(e).tail, hv - 1)) return std::nullopt;
    }
    int low = 0;
    for (NodeId v : component) low = std::min(low, h[static_cast<std::size_t>(v)]);
    for (NodeId v : component) h[static_cast<std::size_t>(v)] -= low;
  }
  return h;
}

std::size_t DecompositionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const Node& x) { return x.label == Label::Leaf; }));
}

std::string_view to_string(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::General: return "general";
    case StructureKind::Acyclic: return "acyclic";
    case StructureKind::Layered: return "layered";
    case StructureKind::Asp: return "asp";
  }
  return "general";
}

StructureClass classify(const Multidigraph& g) {
  StructureClass result;
  if (!is_acyclic(g)) return result;
  result.kind = StructureKind::Acyclic;
  if (auto layers = layer_assignment(g)) {
    result.layers = std::move(*layers);
    result.layered = true;
    result.kind = StructureKind::Layered;
  }
  if (auto tree = try_asp_decompose(g)) {
    result.tree = std::move(tree);
    result.kind = StructureKind::Asp;
  }
  return result;
}

std::vector<std::vector<int>> min_hop_matrix(const Multidigraph& g) {
  topological_order(g);
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, kNoHops));
  std::vector<NodeId> queue;
  for (std::size_t src = 0; src < n; ++src) {
    auto& row = hops[src];
    row[src] = 0;
    queue.assign(1, static_cast<NodeId>(src));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      for (ArcId e : g.out_arcs(v)) {
        const auto w = static_cast<std::size_t>(g.arc(e).head);
        if (row[w] == kNoHops) {
          row[w] = row[static_cast<std::size_t>(v)] + 1;
          queue.push_back(static_cast<NodeId>(w));
        }
      }
    }
  }
  return hops;
}

// ---------------------------------------------------------------------------

ShortestPathsTo::ShortestPathsTo(const Multidigraph& g, std::span<const double> cost,
                                 NodeId target, std::span<const NodeId> topo)
    : g_(&g), cost_(cost), target_(target),
      dist_(static_cast<std::size_t>(g.node_count()), kInf) {
  dist_[static_cast<std::size_t>(target)] = 0.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const NodeId v = *it;
    if (v == target) continue;
    double best = kInf;
    for (ArcId e : g.out_arcs(v)) {
      const double rest = dist_[static_cast<std::size_t>(g.arc(e).head)];
      if (rest == kInf) continue;
      best = std::min(best, cost[static_cast<std::size_t>(e)] + rest);
    }
    dist_[static_cast<std::size_t>(v)] = best;
  }
}

std::optional<Path> ShortestPathsTo::path_from(NodeId from) const {
  if (dist_[static_cast<std::size_t>(from)] == kInf) return std::nullopt;
  Path path;
  NodeId at = from;
  while (at != target_) {
    const double want = dist_[static_cast<std::size_t>(at)];
    for (ArcId e : g_->out_arcs(at)) {
      const double rest = dist_[static_cast<std::size_t>(g_->arc(e).head)];
      if (rest != kInf && cost_[static_cast<std::size_t>(e)] + rest == want) {
        path.arcs.push_back(e);
        at = g_->arc(e).head;
        break;
      }
    }
  }
  return path;
}

std::optional<PathValue> shortest_path_dag(const Multidigraph& g,
                                           std::span<const double> cost, NodeId from,
                                           NodeId to) {
  const auto topo = topological_order(g);
  ShortestPathsTo sp(g, cost, to, topo);
  auto path = sp.path_from(from);
  if (!path) return std::nullopt;
  return PathValue{std::move(*path), sp.distance(from)};
}

std::vector<Path> enumerate_st_paths(const Multidigraph& g, std::size_t cap) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<char> reaches(n, 0);
  std::vector<NodeId> queue{g.sink()};
  reaches[static_cast<std::size_t>(g.sink())] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ArcId e : g.in_arcs(queue[head])) {
      const auto t = static_cast<std::size_t>(g.arc(e).tail);
      if (!reaches[t]) {
        reaches[t] = 1;
        queue.push_back(static_cast<NodeId>(t));
      }
    }
  }

  std::vector<Path> paths;
  if (!reaches[static_cast<std::size_t>(g.source())]) return paths;

  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<char> on_path(n, 0);
  std::vector<Frame> stack{{g.source(), 0}};
  Path current;
  on_path[static_cast<std::size_t>(g.source())] = 1;
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto out = g.out_arcs(top.node);
    if (top.node == g.sink() || top.next >= out.size()) {
      if (top.node == g.sink()) {
        if (paths.size() == cap) throw TooManyPaths(cap);
        paths.push_back(current);
      }
      on_path[static_cast<std::size_t>(top.node)] = 0;
      stack.pop_back();
      if (!current.arcs.empty()) current.arcs.pop_back();
      continue;
    }
    const ArcId e = out[top.next++];
    const NodeId w = g.arc(e).head;
    if (on_path[static_cast<std::size_t>(w)] || !reaches[static_cast<std::size_t>(w)])
      continue;
    on_path[static_cast<std::size_t>(w)] = 1;
    current.arcs.push_back(e);
    stack.push_back({w, 0});
  }
  return paths;
}

}  // namespace rrsp
