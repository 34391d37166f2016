#include <cstdint>
#include <deque>
#include <unordered_map>

#include "rrsp/error.hpp"
#include "rrsp/graph.hpp"

namespace rrsp {

namespace {

using Label = DecompositionTree::Label;

// Series/parallel reduction on a mutable copy of the arc set. Each live edge
// is a tree node; merging two edges appends the parent node.
class Reducer {
 public:
  explicit Reducer(const Multidigraph& g)
      : g_(g),
        in_deg_(static_cast<std::size_t>(g.node_count()), 0),
        out_deg_(static_cast<std::size_t>(g.node_count()), 0),
        in_edges_(static_cast<std::size_t>(g.node_count())),
        out_edges_(static_cast<std::size_t>(g.node_count())) {}

  std::optional<DecompositionTree> run() {
    const auto m = static_cast<std::size_t>(g_.arc_count());
    if (m == 0) return std::nullopt;
    tree_.nodes.reserve(2 * m);
    for (ArcId e = 0; e < g_.arc_count(); ++e) {
      DecompositionTree::Node leaf;
      leaf.label = Label::Leaf;
      leaf.arc = e;
      leaf.source = g_.arc(e).tail;
      leaf.sink = g_.arc(e).head;
      insert(push(leaf));
    }
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (g_.in_arcs(v).empty() && g_.out_arcs(v).empty()) return std::nullopt;
      if (in_deg_[i] == 1 && out_deg_[i] == 1) pending_.push_back(v);
    }
    while (!pending_.empty()) {
      const NodeId v = pending_.front();
      pending_.pop_front();
      series_at(v);
    }
    if (live_ != 1) return std::nullopt;
    const std::int32_t root = static_cast<std::int32_t>(tree_.nodes.size()) - 1;
    const auto& r = tree_.nodes[static_cast<std::size_t>(root)];
    if (r.source != g_.source() || r.sink != g_.sink()) return std::nullopt;
    tree_.root = root;
    return std::move(tree_);
  }

 private:
  static std::uint64_t key(NodeId tail, NodeId head) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tail)) << 32) |
           static_cast<std::uint32_t>(head);
  }

  std::int32_t push(const DecompositionTree::Node& node) {
    tree_.nodes.push_back(node);
    alive_.push_back(0);
    return static_cast<std::int32_t>(tree_.nodes.size()) - 1;
  }

  const DecompositionTree::Node& node(std::int32_t id) const {
    return tree_.nodes[static_cast<std::size_t>(id)];
  }

  void kill(std::int32_t id) {
    const auto& x = node(id);
    alive_[static_cast<std::size_t>(id)] = 0;
    --out_deg_[static_cast<std::size_t>(x.source)];
    --in_deg_[static_cast<std::size_t>(x.sink)];
    --live_;
  }

  void insert(std::int32_t id) {
    const auto& x = node(id);
    const NodeId tail = x.source;
    const NodeId head = x.sink;
    auto [it, fresh] = by_ends_.try_emplace(key(tail, head), id);
    if (!fresh) {
      const std::int32_t other = it->second;
      kill(other);
      DecompositionTree::Node p;
      p.label = Label::Parallel;
      p.left = other;
      p.right = id;
      p.source = tail;
      p.sink = head;
      p.max_arcs = std::max(node(other).max_arcs, node(id).max_arcs);
      id = push(p);
      it->second = id;
    }
    alive_[static_cast<std::size_t>(id)] = 1;
    ++live_;
    ++out_deg_[static_cast<std::size_t>(tail)];
    ++in_deg_[static_cast<std::size_t>(head)];
    out_edges_[static_cast<std::size_t>(tail)].push_back(id);
    in_edges_[static_cast<std::size_t>(head)].push_back(id);
  }

  std::int32_t live_edge(std::vector<std::int32_t>& edges) {
    std::erase_if(edges, [&](std::int32_t id) { return !alive_[static_cast<std::size_t>(id)]; });
    return edges.front();
  }

  void series_at(NodeId v) {
    const auto i = static_cast<std::size_t>(v);
    if (v == g_.source() || v == g_.sink()) return;
    if (in_deg_[i] != 1 || out_deg_[i] != 1) return;
    const std::int32_t first = live_edge(in_edges_[i]);
    const std::int32_t second = live_edge(out_edges_[i]);
    const NodeId tail = node(first).source;
    const NodeId head = node(second).sink;
    if (tail == v || head == v || tail == head) return;  // cyclic input
    by_ends_.erase(key(tail, v));
    by_ends_.erase(key(v, head));
    kill(first);
    kill(second);
    DecompositionTree::Node s;
    s.label = Label::Series;
    s.left = first;
    s.right = second;
    s.source = tail;
    s.sink = head;
    s.max_arcs = node(first).max_arcs + node(second).max_arcs;
    insert(push(s));
    for (NodeId w : {tail, head}) {
      const auto j = static_cast<std::size_t>(w);
      if (in_deg_[j] == 1 && out_deg_[j] == 1) pending_.push_back(w);
    }
  }

  const Multidigraph& g_;
  DecompositionTree tree_;
  std::vector<char> alive_;
  std::vector<std::int32_t> in_deg_;
  std::vector<std::int32_t> out_deg_;
  std::vector<std::vector<std::int32_t>> in_edges_;
  std::vector<std::vector<std::int32_t>> out_edges_;
  std::unordered_map<std::uint64_t, std::int32_t> by_ends_;
  std::deque<NodeId> pending_;
  std::int64_t live_ = 0;
};

}  // namespace

std::optional<DecompositionTree> try_asp_decompose(const Multidigraph& g) {
  if (!is_acyclic(g)) return std::nullopt;
  return Reducer(g).run();
}

DecompositionTree asp_decompose(const Multidigraph& g) {
  auto tree = try_asp_decompose(g);
  if (!tree)
    throw Error(ErrorKind::NotSeriesParallel,
                "graph is not arc series-parallel between its source and sink");
  return std::move(*tree);
}

}  // namespace rrsp
