#include "rrsp/secondstage.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"
#include "rrsp/simplex.hpp"

namespace rrsp {

namespace {

// Backward table over (node, remaining balance r) for lo <= r <= hi.
class BudgetTable {
 public:
  BudgetTable(const Instance& inst, const Path& x, std::span<const double> cost)
      : g_(inst.graph), cost_(cost) {
    const auto m = static_cast<std::size_t>(g_.arc_count());
    in_x_.assign(m, 0);
    for (ArcId e : x.arcs) in_x_[static_cast<std::size_t>(e)] = 1;
    const int len = static_cast<int>(x.size());
    const int k = std::min(inst.k, 2 * g_.node_count());
    int new_weight = 1;
    int x_weight = 0;
    start_ = k;
    switch (inst.neighborhood) {
      case NeighborhoodKind::Incl: break;
      case NeighborhoodKind::Excl:
        new_weight = 0;
        x_weight = -1;
        start_ = k - len;
        break;
      case NeighborhoodKind::Sym:
        x_weight = -1;
        start_ = k - len;
        break;
    }
    weight_.resize(m);
    for (std::size_t e = 0; e < m; ++e) weight_[e] = in_x_[e] ? x_weight : new_weight;
    lo_ = -len - 1;
    hi_ = k;
    span_ = static_cast<std::size_t>(hi_ - lo_ + 1);
    table_.assign(static_cast<std::size_t>(g_.node_count()) * span_, kInf);

    const auto topo = topological_order(g_);
    const NodeId t = g_.sink();
    for (int r = 0; r <= hi_; ++r) cell(t, r) = 0.0;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const NodeId v = *it;
      if (v == t) continue;
      for (ArcId e : g_.out_arcs(v)) {
        const NodeId w = g_.arc(e).head;
        const double ce = cost_[static_cast<std::size_t>(e)];
        for (int r = lo_; r <= hi_; ++r) {
          const auto next = step(r, e);
          if (!next) continue;
          const double rest = cell(w, *next);
          if (rest == kInf) continue;
          double& here = cell(v, r);
          here = std::min(here, ce + rest);
        }
      }
    }
  }

  int start() const { return start_; }
  double value(NodeId v, int r) const { return table_[index(v, r)]; }

  std::optional<int> step(int r, ArcId e) const {
    const int next = r - weight_[static_cast<std::size_t>(e)];
    if (next < lo_) return std::nullopt;
    return std::min(next, hi_);
  }

  Path best_path() const {
    Path out;
    NodeId at = g_.source();
    int r = start_;
    while (at != g_.sink()) {
      const double want = value(at, r);
      bool moved = false;
      for (ArcId e : g_.out_arcs(at)) {
        const auto next = step(r, e);
        if (!next) continue;
        const NodeId w = g_.arc(e).head;
        const double rest = value(w, *next);
        if (rest != kInf && cost_[static_cast<std::size_t>(e)] + rest == want) {
          out.arcs.push_back(e);
          at = w;
          r = *next;
          moved = true;
          break;
        }
      }
      if (!moved) throw Error(ErrorKind::Infeasible, "incremental reconstruction failed");
    }
    return out;
  }

 private:
  std::size_t index(NodeId v, int r) const {
    return static_cast<std::size_t>(v) * span_ + static_cast<std::size_t>(r - lo_);
  }
  double& cell(NodeId v, int r) { return table_[index(v, r)]; }
  double cell(NodeId v, int r) const { return table_[index(v, r)]; }

  const Multidigraph& g_;
  std::span<const double> cost_;
  std::vector<char> in_x_;
  std::vector<int> weight_;
  int start_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::size_t span_ = 0;
  std::vector<double> table_;
};

double scenario_cost(const Path& y, std::span<const double> cost) { return path_cost(y, cost); }

}  // namespace

PathValue solve_incremental(const Instance& inst, const Path& x, const Scenario& scenario) {
  require_st_path(inst.graph, x);
  if (scenario.cost.size() != static_cast<std::size_t>(inst.arc_count()))
    throw Error(ErrorKind::Validation, "scenario must have one cost per arc");
  BudgetTable table(inst, x, scenario.cost);
  const double best = table.value(inst.graph.source(), table.start());
  if (best == kInf) throw Error(ErrorKind::Infeasible, "neighborhood is empty");
  return PathValue{table.best_path(), best};
}

std::vector<Path> enumerate_neighborhood(const Instance& inst, const Path& x,
                                         std::size_t cap) {
  require_st_path(inst.graph, x);
  const std::vector<double> zero(static_cast<std::size_t>(inst.arc_count()), 0.0);
  BudgetTable table(inst, x, zero);
  const Multidigraph& g = inst.graph;

  std::vector<Path> out;
  Path current;
  // Only states that can still reach the sink within budget are expanded, so
  // the walk does work proportional to its output.
  auto walk = [&](auto&& self, NodeId v, int r) -> void {
    if (v == g.sink()) {
      if (out.size() == cap) throw TooManyPaths(cap);
      out.push_back(current);
      return;
    }
    for (ArcId e : g.out_arcs(v)) {
      const auto next = table.step(r, e);
      if (!next) continue;
      const NodeId w = g.arc(e).head;
      if (table.value(w, *next) == kInf) continue;
      current.arcs.push_back(e);
      self(self, w, *next);
      current.arcs.pop_back();
    }
  };
  if (table.value(g.source(), table.start()) != kInf) walk(walk, g.source(), table.start());
  return out;
}

Evaluation adversarial_interval(const Instance& inst, const Path& x) {
  Evaluation ev;
  ev.witness = upper_bound_scenario(inst);
  auto inc = solve_incremental(inst, x, ev.witness);
  ev.value = path_cost(x, inst.first_stage) + inc.value;
  ev.recovery = std::move(inc.path);
  ev.method = "dp";
  return ev;
}

namespace {

std::vector<ArcId> deviation_support(const Instance& inst, const std::vector<Path>& ys) {
  std::vector<char> mark(static_cast<std::size_t>(inst.arc_count()), 0);
  for (const Path& y : ys)
    for (ArcId e : y.arcs)
      if (inst.deviation[static_cast<std::size_t>(e)] > 0) mark[static_cast<std::size_t>(e)] = 1;
  std::vector<ArcId> support;
  for (std::size_t e = 0; e < mark.size(); ++e)
    if (mark[e]) support.push_back(static_cast<ArcId>(e));
  return support;
}

// First member of `ys` that is cheapest under `cost`.
std::size_t cheapest(const std::vector<Path>& ys, std::span<const double> cost) {
  std::size_t best = 0;
  double best_value = kInf;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double v = scenario_cost(ys[i], cost);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

Evaluation evaluate_continuous(const Instance& inst, const Path& x, double budget,
                               const std::vector<Path>& ys) {
  const auto support = deviation_support(inst, ys);
  Evaluation ev;
  ev.method = "enumeration+lp";
  ev.witness = nominal_scenario(inst);
  double adversary = kInf;
  if (support.empty() || budget <= 0) {
    for (const Path& y : ys) adversary = std::min(adversary, scenario_cost(y, inst.nominal));
  } else {
    // Variables: t, then u_e for each support arc.
    const std::size_t cols = support.size() + 1;
    std::vector<std::size_t> column(static_cast<std::size_t>(inst.arc_count()), 0);
    for (std::size_t j = 0; j < support.size(); ++j)
      column[static_cast<std::size_t>(support[j])] = j + 1;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(ys.size() + support.size() + 1);
    for (const Path& y : ys) {
      std::vector<double> row(cols, 0.0);
      row[0] = 1.0;
      for (ArcId e : y.arcs)
        if (const auto j = column[static_cast<std::size_t>(e)]) row[j] = -1.0;
      a.push_back(std::move(row));
      b.push_back(scenario_cost(y, inst.nominal));
    }
    for (std::size_t j = 0; j < support.size(); ++j) {
      std::vector<double> row(cols, 0.0);
      row[j + 1] = 1.0;
      a.push_back(std::move(row));
      b.push_back(inst.deviation[static_cast<std::size_t>(support[j])]);
    }
    std::vector<double> total(cols, 1.0);
    total[0] = 0.0;
    a.push_back(std::move(total));
    b.push_back(budget);
    std::vector<double> c(cols, 0.0);
    c[0] = 1.0;
    const auto lp = maximize_lp(a, b, c);
    if (lp.status != LpStatus::Optimal)
      throw Error(ErrorKind::SolverError, "adversarial LP reported unbounded");
    adversary = lp.value;
    for (std::size_t j = 0; j < support.size(); ++j) {
      const auto e = static_cast<std::size_t>(support[j]);
      ev.witness.cost[e] += std::clamp(lp.x[j + 1], 0.0, inst.deviation[e]);
    }
  }
  ev.recovery = ys[cheapest(ys, ev.witness.cost)];
  ev.value = path_cost(x, inst.first_stage) + adversary;
  return ev;
}

Evaluation evaluate_discrete(const Instance& inst, const Path& x, int budget,
                             const std::vector<Path>& ys, const EvaluateOptions& options) {
  const auto support = deviation_support(inst, ys);
  const std::size_t s = support.size();
  const std::size_t pick = std::min<std::size_t>(static_cast<std::size_t>(std::max(budget, 0)), s);

  // Raising more arcs never helps the recovery, so only subsets of size
  // exactly `pick` need to be tried.
  double combos = 1.0;
  for (std::size_t i = 0; i < pick; ++i)
    combos = combos * static_cast<double>(s - i) / static_cast<double>(i + 1);
  if (combos > static_cast<double>(options.subset_cap))
    throw Error(ErrorKind::Capacity,
                "discrete adversary needs " + std::to_string(static_cast<long long>(combos)) +
                    " subsets, above the cap of " + std::to_string(options.subset_cap));

  std::vector<double> base(ys.size());
  std::vector<std::vector<std::size_t>> touched(ys.size());
  std::vector<std::size_t> slot(static_cast<std::size_t>(inst.arc_count()), s);
  for (std::size_t j = 0; j < s; ++j) slot[static_cast<std::size_t>(support[j])] = j;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    base[i] = scenario_cost(ys[i], inst.nominal);
    for (ArcId e : ys[i].arcs)
      if (slot[static_cast<std::size_t>(e)] < s) touched[i].push_back(slot[static_cast<std::size_t>(e)]);
  }

  std::vector<char> raised(s, 0);
  std::vector<std::size_t> chosen(pick);
  for (std::size_t i = 0; i < pick; ++i) chosen[i] = i;
  double best = -kInf;
  std::vector<std::size_t> best_set;
  for (;;) {
    for (std::size_t j : chosen) raised[j] = 1;
    double worst = kInf;
    for (std::size_t i = 0; i < ys.size() && worst > best; ++i) {
      double v = base[i];
      for (std::size_t j : touched[i])
        if (raised[j]) v += inst.deviation[static_cast<std::size_t>(support[j])];
      worst = std::min(worst, v);
    }
    if (worst > best) {
      best = worst;
      best_set = chosen;
    }
    for (std::size_t j : chosen) raised[j] = 0;

    // Next combination in lexicographic order.
    std::size_t i = pick;
    while (i > 0 && chosen[i - 1] == s - pick + (i - 1)) --i;
    if (i == 0) break;
    ++chosen[i - 1];
    for (std::size_t j = i; j < pick; ++j) chosen[j] = chosen[j - 1] + 1;
  }

  Evaluation ev;
  ev.method = "enumeration+subsets";
  ev.witness = nominal_scenario(inst);
  for (std::size_t j : best_set) {
    const auto e = static_cast<std::size_t>(support[j]);
    ev.witness.cost[e] += inst.deviation[e];
  }
  ev.recovery = ys[cheapest(ys, ev.witness.cost)];
  ev.value = path_cost(x, inst.first_stage) + best;
  return ev;
}

}  // namespace

Evaluation evaluate_with_recoveries(const Instance& inst, const Path& x,
                                   const std::vector<Path>& recoveries,
                                   const EvaluateOptions& options) {
  if (recoveries.empty()) throw Error(ErrorKind::Infeasible, "neighborhood is empty");
  if (const auto* c = std::get_if<ContinuousBudget>(&inst.uncertainty))
    return evaluate_continuous(inst, x, c->budget, recoveries);
  if (const auto* d = std::get_if<DiscreteBudget>(&inst.uncertainty))
    return evaluate_discrete(inst, x, d->budget, recoveries, options);
  Evaluation ev;
  ev.witness = upper_bound_scenario(inst);
  ev.recovery = recoveries[cheapest(recoveries, ev.witness.cost)];
  ev.value = path_cost(x, inst.first_stage) + scenario_cost(ev.recovery, ev.witness.cost);
  ev.method = "enumeration";
  return ev;
}

Evaluation evaluate_objective(const Instance& inst, const Path& x,
                              const EvaluateOptions& options) {
  require_st_path(inst.graph, x);
  if (is_interval(inst.uncertainty)) return adversarial_interval(inst, x);
  return evaluate_with_recoveries(inst, x, enumerate_neighborhood(inst, x, options.path_cap),
                                  options);
}

}  // namespace rrsp
