#include "rrsp/gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "rrsp/error.hpp"

namespace rrsp {

std::string family_name(const Family& f) {
  if (std::holds_alternative<LayeredFamily>(f)) return "layered";
  if (std::holds_alternative<RandomDagFamily>(f)) return "random-dag";
  return "asp";
}

namespace {

using Rng = std::mt19937_64;

struct Skeleton {
  std::int32_t nodes = 0;
  std::vector<Arc> arcs;
  NodeId s = 0;
  NodeId t = 0;
  std::vector<std::string> names;
};

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Emits arcs of a boolean adjacency matrix in (tail, head) order.
void emit(const std::vector<std::vector<char>>& adj, Skeleton& sk) {
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (std::size_t v = 0; v < adj[u].size(); ++v)
      if (adj[u][v]) sk.arcs.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
}

Skeleton layered_skeleton(const LayeredFamily& f, Rng& rng) {
  if (f.layers < 2 || f.width < 1 || !(f.density > 0 && f.density <= 1))
    throw Error(ErrorKind::Validation, "layered family needs layers >= 2, width >= 1, density in (0,1]");
  std::vector<std::vector<NodeId>> layer(static_cast<std::size_t>(f.layers));
  Skeleton sk;
  for (int l = 0; l < f.layers; ++l) {
    const int size = (l == 0 || l == f.layers - 1) ? 1 : f.width;
    for (int i = 0; i < size; ++i) {
      layer[static_cast<std::size_t>(l)].push_back(sk.nodes++);
      if (l == 0) sk.names.push_back("s");
      else if (l == f.layers - 1) sk.names.push_back("t");
      else sk.names.push_back("L" + std::to_string(l) + "_" + std::to_string(i));
    }
  }
  sk.s = 0;
  sk.t = sk.nodes - 1;
  const auto n = static_cast<std::size_t>(sk.nodes);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t l = 0; l + 1 < layer.size(); ++l) {
    const auto& from = layer[l];
    const auto& to = layer[l + 1];
    for (NodeId u : from)
      for (NodeId v : to) adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = chance(rng, f.density);
    for (NodeId v : to) {
      bool has = false;
      for (NodeId u : from) has |= adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0;
      if (!has) {
        const NodeId u = from[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(from.size()) - 1))];
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
      }
    }
    for (NodeId u : from) {
      bool has = false;
      for (NodeId v : to) has |= adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0;
      if (!has) {
        const NodeId v = to[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(to.size()) - 1))];
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
      }
    }
  }
  emit(adj, sk);
  return sk;
}

Skeleton dag_skeleton(const RandomDagFamily& f, Rng& rng) {
  if (f.nodes < 2 || !(f.arc_probability > 0 && f.arc_probability <= 1))
    throw Error(ErrorKind::Validation, "random DAG family needs n >= 2 and probability in (0,1]");
  Skeleton sk;
  sk.nodes = f.nodes;
  sk.s = 0;
  sk.t = f.nodes - 1;
  const auto n = static_cast<std::size_t>(f.nodes);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) adj[u][v] = chance(rng, f.arc_probability);
  for (std::size_t v = 1; v < n; ++v) {
    bool has = false;
    for (std::size_t u = 0; u < v; ++u) has |= adj[u][v] != 0;
    if (!has) adj[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v) - 1))][v] = 1;
  }
  for (std::size_t u = 0; u + 1 < n; ++u) {
    bool has = false;
    for (std::size_t v = u + 1; v < n; ++v) has |= adj[u][v] != 0;
    if (!has) adj[u][static_cast<std::size_t>(pick(rng, static_cast<int>(u) + 1, static_cast<int>(n) - 1))] = 1;
  }
  emit(adj, sk);
  for (std::size_t v = 0; v < n; ++v)
    sk.names.push_back(v == 0 ? "s" : v + 1 == n ? "t" : "v" + std::to_string(v));
  return sk;
}

Skeleton asp_skeleton(const AspFamily& f, Rng& rng) {
  if (f.leaves < 1 || !(f.series_bias >= 0 && f.series_bias <= 1))
    throw Error(ErrorKind::Validation, "ASP family needs leaves >= 1 and bias in [0,1]");
  Skeleton sk;
  sk.nodes = 2;
  sk.s = 0;
  sk.t = 1;
  sk.arcs.reserve(static_cast<std::size_t>(f.leaves));
  sk.arcs.push_back({0, 1});
  while (static_cast<int>(sk.arcs.size()) < f.leaves) {
    const auto e = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(sk.arcs.size()) - 1));
    const Arc a = sk.arcs[e];
    if (chance(rng, f.series_bias)) {
      const NodeId w = sk.nodes++;
      sk.arcs[e] = {a.tail, w};
      sk.arcs.push_back({w, a.head});
    } else {
      sk.arcs.push_back(a);
    }
  }
  sk.names.push_back("s");
  sk.names.push_back("t");
  for (NodeId v = 2; v < sk.nodes; ++v) sk.names.push_back("v" + std::to_string(v));
  return sk;
}

double draw_cost(Rng& rng, const CostRange& r, bool integral) {
  if (integral) {
    const auto lo = static_cast<long long>(std::ceil(r.lo));
    const auto hi = static_cast<long long>(std::floor(r.hi));
    return static_cast<double>(std::uniform_int_distribution<long long>(lo, hi)(rng));
  }
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

void check_range(const CostRange& r, bool integral, bool nonnegative, const char* what) {
  const std::string name(what);
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw Error(ErrorKind::Validation, name + " range is empty");
  if (integral && std::ceil(r.lo) > std::floor(r.hi))
    throw Error(ErrorKind::Validation, name + " range holds no integer");
  if (nonnegative && r.lo < 0) throw Error(ErrorKind::Validation, name + " range must be nonnegative");
}

bool promise_holds(const Family& f, const Multidigraph& g) {
  if (std::holds_alternative<LayeredFamily>(f)) return layer_assignment(g).has_value();
  if (std::holds_alternative<AspFamily>(f)) return try_asp_decompose(g).has_value();
  return is_acyclic(g);
}

}  // namespace

Instance generate(const GenParams& params) {
  check_range(params.first_stage, params.integral, false, "first-stage cost");
  check_range(params.nominal, params.integral, true, "nominal cost");
  check_range(params.deviation, params.integral, true, "deviation");
  if (params.k_min < 0 || params.k_min > params.k_max)
    throw Error(ErrorKind::Validation, "k range is empty or negative");
  if (params.budget.value < 0 || !std::isfinite(params.budget.value))
    throw Error(ErrorKind::Validation, "budget must be a nonnegative number");
  if (params.max_attempts < 1) throw Error(ErrorKind::Validation, "max_attempts must be positive");

  Rng rng(params.seed);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Skeleton sk = std::visit(
        [&](const auto& f) -> Skeleton {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, LayeredFamily>) return layered_skeleton(f, rng);
          else if constexpr (std::is_same_v<F, RandomDagFamily>) return dag_skeleton(f, rng);
          else return asp_skeleton(f, rng);
        },
        params.family);
    Instance inst;
    inst.graph = Multidigraph(sk.nodes, std::move(sk.arcs), sk.s, sk.t);
    inst.graph.set_node_names(std::move(sk.names));
    const auto m = static_cast<std::size_t>(inst.graph.arc_count());
    inst.first_stage.resize(m);
    inst.nominal.resize(m);
    inst.deviation.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
      inst.first_stage[e] = draw_cost(rng, params.first_stage, params.integral);
      inst.nominal[e] = draw_cost(rng, params.nominal, params.integral);
      inst.deviation[e] = draw_cost(rng, params.deviation, params.integral);
    }
    inst.k = pick(rng, params.k_min, params.k_max);
    inst.neighborhood = params.neighborhood;
    switch (params.budget.kind) {
      case BudgetKind::Interval: inst.uncertainty = IntervalUncertainty{}; break;
      case BudgetKind::Discrete: {
        const double raw = params.budget.relative ? params.budget.value * static_cast<double>(m)
                                                  : params.budget.value;
        inst.uncertainty = DiscreteBudget{
            static_cast<int>(std::min<double>(std::llround(raw), static_cast<double>(m)))};
        break;
      }
      case BudgetKind::Continuous:
        inst.uncertainty = ContinuousBudget{
            params.budget.relative ? params.budget.value * inst.total_deviation() : params.budget.value};
        break;
    }
    inst.label = family_name(params.family) + "-seed" + std::to_string(params.seed);
    if (promise_holds(params.family, inst.graph) && validate_instance(inst).empty()) return inst;
  }
  throw Error(ErrorKind::Capacity, "generator gave up after " + std::to_string(params.max_attempts) +
                                       " attempts");
}

// ---------------------------------------------------------------------------

void validate_kvdp(const KVdpInstance& kv) {
  if (kv.terminals.empty()) throw Error(ErrorKind::Validation, "K-V-DP needs at least one pair");
  if (kv.node_count < 1) throw Error(ErrorKind::Validation, "K-V-DP graph has no nodes");
  std::vector<char> seen(static_cast<std::size_t>(kv.node_count), 0);
  for (const auto& [s, t] : kv.terminals) {
    for (NodeId v : {s, t}) {
      if (v < 0 || v >= kv.node_count) throw Error(ErrorKind::Validation, "terminal out of range");
      if (seen[static_cast<std::size_t>(v)]++)
        throw Error(ErrorKind::Validation, "terminal " + std::to_string(v) + " repeats");
    }
  }
  for (const Arc& a : kv.arcs)
    if (a.tail < 0 || a.tail >= kv.node_count || a.head < 0 || a.head >= kv.node_count)
      throw Error(ErrorKind::Validation, "arc endpoint out of range");
}

namespace {

class DisjointSearch {
 public:
  explicit DisjointSearch(const KVdpInstance& kv) : kv_(kv) {
    const auto n = static_cast<std::size_t>(kv.node_count);
    out_.resize(n);
    for (const Arc& a : kv.arcs)
      if (a.tail != a.head) out_[static_cast<std::size_t>(a.tail)].push_back(a.head);
    for (auto& list : out_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    used_.assign(n, 0);
    owner_.assign(n, -1);
    for (std::size_t i = 0; i < kv.terminals.size(); ++i) {
      owner_[static_cast<std::size_t>(kv.terminals[i].first)] = static_cast<int>(i);
      owner_[static_cast<std::size_t>(kv.terminals[i].second)] = static_cast<int>(i);
    }
  }

  bool run() { return route(0); }

 private:
  bool route(std::size_t pair) {
    if (pair == kv_.terminals.size()) return true;
    const NodeId s = kv_.terminals[pair].first;
    used_[static_cast<std::size_t>(s)] = 1;
    const bool ok = extend(pair, s);
    used_[static_cast<std::size_t>(s)] = 0;
    return ok;
  }

  bool extend(std::size_t pair, NodeId v) {
    const NodeId t = kv_.terminals[pair].second;
    if (v == t) return route(pair + 1);
    for (NodeId w : out_[static_cast<std::size_t>(v)]) {
      const auto wi = static_cast<std::size_t>(w);
      if (used_[wi]) continue;
      if (owner_[wi] >= 0 && owner_[wi] != static_cast<int>(pair)) continue;
      used_[wi] = 1;
      const bool ok = extend(pair, w);
      used_[wi] = 0;
      if (ok) return true;
    }
    return false;
  }

  const KVdpInstance& kv_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<char> used_;
  std::vector<int> owner_;
};

std::vector<std::string> gadget_names(const KVdpInstance& kv) {
  std::vector<std::string> names(static_cast<std::size_t>(kv.node_count));
  for (std::size_t v = 0; v < names.size(); ++v) names[v] = "v" + std::to_string(v);
  for (std::size_t i = 0; i < kv.terminals.size(); ++i) {
    names[static_cast<std::size_t>(kv.terminals[i].first)] = "s" + std::to_string(i + 1);
    names[static_cast<std::size_t>(kv.terminals[i].second)] = "t" + std::to_string(i + 1);
  }
  return names;
}

enum class HArc { Pair, Connector };

// G + H with per-arc costs chosen by `cost(is_g, h_kind)`.
template <class CostFn>
Instance gadget_base(const KVdpInstance& kv, const std::string& label, CostFn cost) {
  validate_kvdp(kv);
  std::vector<Arc> arcs = kv.arcs;
  std::vector<std::array<double, 3>> costs(arcs.size(), cost(true, HArc::Pair));
  const std::size_t pairs = kv.terminals.size();
  for (std::size_t i = 0; i < pairs; ++i) {
    arcs.push_back({kv.terminals[i].first, kv.terminals[i].second});
    costs.push_back(cost(false, HArc::Pair));
    if (i + 1 < pairs) {
      arcs.push_back({kv.terminals[i].second, kv.terminals[i + 1].first});
      costs.push_back(cost(false, HArc::Connector));
    }
  }
  Instance inst;
  inst.graph = Multidigraph(kv.node_count, std::move(arcs), kv.terminals.front().first,
                            kv.terminals.back().second);
  inst.graph.set_node_names(gadget_names(kv));
  for (const auto& c : costs) {
    inst.first_stage.push_back(c[0]);
    inst.nominal.push_back(c[1]);
    inst.deviation.push_back(c[2]);
  }
  inst.k = static_cast<int>(pairs);
  inst.label = label + " K=" + std::to_string(pairs);
  return inst;
}

}  // namespace

bool disjoint_paths_exist(const KVdpInstance& kv) {
  validate_kvdp(kv);
  return DisjointSearch(kv).run();
}

KVdpInstance random_kvdp(int nodes, int pairs, double arc_probability, std::uint64_t seed) {
  if (pairs < 1 || nodes < 2 * pairs)
    throw Error(ErrorKind::Validation, "need at least 2K nodes and K >= 1");
  if (!(arc_probability >= 0 && arc_probability <= 1))
    throw Error(ErrorKind::Validation, "arc probability must lie in [0,1]");
  Rng rng(seed);
  KVdpInstance kv;
  kv.node_count = nodes;
  for (NodeId u = 0; u < nodes; ++u)
    for (NodeId v = 0; v < nodes; ++v)
      if (u != v && chance(rng, arc_probability)) kv.arcs.push_back({u, v});
  std::vector<NodeId> order(static_cast<std::size_t>(nodes));
  for (NodeId v = 0; v < nodes; ++v) order[static_cast<std::size_t>(v)] = v;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(i) - 1))]);
  for (int i = 0; i < pairs; ++i)
    kv.terminals.emplace_back(order[static_cast<std::size_t>(2 * i)],
                              order[static_cast<std::size_t>(2 * i + 1)]);
  return kv;
}

Path gadget_path(const KVdpInstance& kv) {
  Path h;
  const auto base = static_cast<ArcId>(kv.arcs.size());
  const auto len = static_cast<ArcId>(2 * kv.terminals.size() - 1);
  for (ArcId e = 0; e < len; ++e) h.arcs.push_back(base + e);
  return h;
}

Instance gadget_recsp_incl(const KVdpInstance& kv) {
  Instance inst = gadget_base(kv, "gadget-recsp-incl", [](bool is_g, HArc h) -> std::array<double, 3> {
    if (is_g) return {0, 1, 0};
    return h == HArc::Pair ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 0, 0};
  });
  inst.neighborhood = NeighborhoodKind::Incl;
  inst.uncertainty = IntervalUncertainty{};
  return inst;
}

IncrementalGadget gadget_incsp_excl(const KVdpInstance& kv) {
  IncrementalGadget out;
  out.instance = gadget_base(kv, "gadget-incsp-excl", [](bool is_g, HArc h) -> std::array<double, 3> {
    if (!is_g && h == HArc::Pair) return {0, 1, 0};
    return {0, 0, 0};
  });
  out.instance.neighborhood = NeighborhoodKind::Excl;
  out.instance.uncertainty = IntervalUncertainty{};
  out.first_stage = gadget_path(kv);
  return out;
}

Instance gadget_recrob_discrete(const KVdpInstance& kv) {
  Instance inst =
      gadget_base(kv, "gadget-recrob-discrete", [](bool is_g, HArc h) -> std::array<double, 3> {
        if (is_g || h == HArc::Pair) return {0, 0, 1};
        return {0, 0, 0};
      });
  inst.k = 1;
  inst.neighborhood = NeighborhoodKind::Incl;
  inst.uncertainty = DiscreteBudget{1};
  return inst;
}

}  // namespace rrsp
