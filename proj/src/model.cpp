#include "rrsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"

namespace rrsp {

std::string_view to_string(NeighborhoodKind kind) noexcept {
  switch (kind) {
    case NeighborhoodKind::Incl: return "incl";
    case NeighborhoodKind::Excl: return "excl";
    case NeighborhoodKind::Sym: return "sym";
  }
  return "incl";
}

std::optional<NeighborhoodKind> parse_neighborhood(std::string_view text) {
  if (text == "incl") return NeighborhoodKind::Incl;
  if (text == "excl") return NeighborhoodKind::Excl;
  if (text == "sym") return NeighborhoodKind::Sym;
  return std::nullopt;
}

std::string describe(const Uncertainty& u) {
  struct Visitor {
    std::string operator()(const IntervalUncertainty&) const { return "interval"; }
    std::string operator()(const DiscreteBudget& d) const {
      return "discrete(" + std::to_string(d.budget) + ")";
    }
    std::string operator()(const ContinuousBudget& c) const {
      std::ostringstream out;
      out << "continuous(" << c.budget << ")";
      return out.str();
    }
  };
  return std::visit(Visitor{}, u);
}

std::vector<double> Instance::upper_costs() const {
  std::vector<double> out(nominal.size());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = nominal[e] + deviation[e];
  return out;
}

double Instance::total_deviation() const {
  double d = 0.0;
  for (double x : deviation) d += x;
  return d;
}

int count_missing(const Path& a, const Path& b) {
  const std::unordered_set<ArcId> in_b(b.arcs.begin(), b.arcs.end());
  int missing = 0;
  for (ArcId e : a.arcs)
    if (!in_b.contains(e)) ++missing;
  return missing;
}

bool neighborhood_contains(const Path& x, const Path& y, NeighborhoodKind kind, int k) {
  switch (kind) {
    case NeighborhoodKind::Incl: return count_missing(y, x) <= k;
    case NeighborhoodKind::Excl: return count_missing(x, y) <= k;
    case NeighborhoodKind::Sym: return count_missing(y, x) + count_missing(x, y) <= k;
  }
  return false;
}

Scenario upper_bound_scenario(const Instance& inst) { return Scenario{inst.upper_costs()}; }

Scenario nominal_scenario(const Instance& inst) { return Scenario{inst.nominal}; }

namespace {

bool sink_reachable(const Multidigraph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<NodeId> queue{g.source()};
  seen[static_cast<std::size_t>(g.source())] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (ArcId e : g.out_arcs(queue[i])) {
      const NodeId w = g.arc(e).head;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen[static_cast<std::size_t>(g.sink())] != 0;
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> issues;
  const auto m = static_cast<std::size_t>(inst.graph.arc_count());
  if (inst.first_stage.size() != m || inst.nominal.size() != m || inst.deviation.size() != m) {
    issues.push_back("cost vectors must have one entry per arc");
    return issues;
  }
  bool negative_first_stage = false;
  for (std::size_t e = 0; e < m; ++e) {
    const std::string arc = "arc " + std::to_string(e);
    if (!std::isfinite(inst.first_stage[e]) || !std::isfinite(inst.nominal[e]) ||
        !std::isfinite(inst.deviation[e]))
      issues.push_back(arc + ": costs must be finite");
    if (inst.nominal[e] < 0) issues.push_back(arc + ": nominal cost is negative");
    if (inst.deviation[e] < 0) issues.push_back(arc + ": deviation is negative");
    if (inst.first_stage[e] < 0) negative_first_stage = true;
  }
  if (negative_first_stage && !is_acyclic(inst.graph))
    issues.push_back("negative first-stage costs require an acyclic graph");
  if (inst.k < 0) issues.push_back("recovery parameter k is negative");
  if (const auto* d = std::get_if<DiscreteBudget>(&inst.uncertainty)) {
    if (d->budget < 0 || static_cast<std::size_t>(d->budget) > m)
      issues.push_back("budget out of range");
  } else if (const auto* c = std::get_if<ContinuousBudget>(&inst.uncertainty)) {
    if (!(c->budget >= 0) || !std::isfinite(c->budget)) issues.push_back("budget out of range");
  }
  if (!sink_reachable(inst.graph)) issues.push_back("sink unreachable");
  return issues;
}

void require_valid(const Instance& inst) {
  const auto issues = validate_instance(inst);
  if (issues.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& issue : issues) msg += " " + issue + ";";
  msg.pop_back();
  throw Error(ErrorKind::Validation, msg);
}

bool scenario_in_uncertainty_set(const Instance& inst, const Scenario& s, double tol) {
  const auto m = static_cast<std::size_t>(inst.arc_count());
  if (s.cost.size() != m) return false;
  int deviating = 0;
  double spent = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const double lo = inst.nominal[e];
    const double hi = inst.nominal[e] + inst.deviation[e];
    if (s.cost[e] < lo - tol || s.cost[e] > hi + tol) return false;
    if (s.cost[e] > lo + tol) ++deviating;
    spent += std::max(0.0, s.cost[e] - lo);
  }
  if (const auto* d = std::get_if<DiscreteBudget>(&inst.uncertainty))
    return deviating <= d->budget;
  if (const auto* c = std::get_if<ContinuousBudget>(&inst.uncertainty))
    return spent <= c->budget + tol;
  return true;
}

double interval_pair_value(const Instance& inst, const Path& x, const Path& y) {
  double value = path_cost(x, inst.first_stage);
  for (ArcId e : y.arcs) {
    const auto i = static_cast<std::size_t>(e);
    value += inst.nominal[i] + inst.deviation[i];
  }
  return value;
}

std::vector<std::string> check_solution(const Instance& inst, const Solution& sol) {
  std::vector<std::string> issues;
  if (!is_st_path(inst.graph, sol.first_stage))
    issues.push_back("first-stage path " + format_path(sol.first_stage) + " is invalid");
  if (!is_st_path(inst.graph, sol.second_stage))
    issues.push_back("second-stage path " + format_path(sol.second_stage) + " is invalid");
  if (!issues.empty()) return issues;
  if (!neighborhood_contains(sol.first_stage, sol.second_stage, inst.neighborhood, inst.k))
    issues.push_back("second-stage path is outside the neighborhood of the first-stage path");
  if (is_interval(inst.uncertainty)) {
    const double v = interval_pair_value(inst, sol.first_stage, sol.second_stage);
    if (!approx_equal(v, sol.value))
      issues.push_back("reported value " + std::to_string(sol.value) +
                       " differs from recomputed " + std::to_string(v));
  }
  return issues;
}

Instance with_uncertainty(const Instance& inst, Uncertainty u) {
  Instance out = inst;
  out.uncertainty = u;
  return out;
}

Instance with_neighborhood(const Instance& inst, NeighborhoodKind kind, int k) {
  Instance out = inst;
  out.neighborhood = kind;
  out.k = k;
  return out;
}

}  // namespace rrsp
