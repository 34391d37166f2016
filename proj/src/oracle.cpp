#include "rrsp/oracle.hpp"

#include <algorithm>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"

namespace rrsp {

namespace {

// Paths with their arc ids sorted, for quick set differences.
struct Indexed {
  const Path* path;
  std::vector<ArcId> sorted;
};

std::vector<Indexed> index_paths(const std::vector<Path>& paths) {
  std::vector<Indexed> out;
  out.reserve(paths.size());
  for (const Path& p : paths) {
    Indexed ix{&p, p.arcs};
    std::sort(ix.sorted.begin(), ix.sorted.end());
    out.push_back(std::move(ix));
  }
  return out;
}

int missing(const std::vector<ArcId>& a, const std::vector<ArcId>& b) {
  int count = 0;
  auto j = b.begin();
  for (ArcId e : a) {
    while (j != b.end() && *j < e) ++j;
    if (j == b.end() || *j != e) ++count;
  }
  return count;
}

bool contains(const Indexed& x, const Indexed& y, NeighborhoodKind kind, int k) {
  switch (kind) {
    case NeighborhoodKind::Incl: return missing(y.sorted, x.sorted) <= k;
    case NeighborhoodKind::Excl: return missing(x.sorted, y.sorted) <= k;
    case NeighborhoodKind::Sym:
      return missing(y.sorted, x.sorted) + missing(x.sorted, y.sorted) <= k;
  }
  return false;
}

std::vector<Path> neighborhood_of(const Instance& inst, const std::vector<Indexed>& all,
                                  const Indexed& x) {
  std::vector<Path> out;
  for (const Indexed& y : all)
    if (contains(x, y, inst.neighborhood, inst.k)) out.push_back(*y.path);
  return out;
}

}  // namespace

Solution oracle_recsp(const Instance& inst, std::size_t cap) {
  require_valid(inst);
  const auto paths = enumerate_st_paths(inst.graph, cap);
  const auto all = index_paths(paths);
  const auto upper = inst.upper_costs();
  std::vector<double> first(paths.size());
  std::vector<double> second(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    first[i] = path_cost(paths[i], inst.first_stage);
    second[i] = path_cost(paths[i], upper);
  }
  const double cheapest_second = *std::min_element(second.begin(), second.end());

  Solution best;
  best.value = kInf;
  std::size_t bx = 0;
  std::size_t by = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!(first[i] + cheapest_second < best.value)) continue;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const double v = first[i] + second[j];
      if (v < best.value && contains(all[i], all[j], inst.neighborhood, inst.k)) {
        best.value = v;
        bx = i;
        by = j;
      }
    }
  }
  best.first_stage = paths[bx];
  best.second_stage = paths[by];
  best.solver = "oracle";
  best.witness = upper_bound_scenario(inst);
  return best;
}

Solution oracle_recrob(const Instance& inst, std::size_t cap, const EvaluateOptions& options) {
  require_valid(inst);
  const auto paths = enumerate_st_paths(inst.graph, cap);
  const auto all = index_paths(paths);
  double cheapest_nominal = kInf;
  for (const Path& p : paths)
    cheapest_nominal = std::min(cheapest_nominal, path_cost(p, inst.nominal));

  Solution best;
  best.value = kInf;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    // F(X) >= C(X) + cheapest nominal path, so hopeless X are skipped.
    if (!(path_cost(paths[i], inst.first_stage) + cheapest_nominal < best.value)) continue;
    const auto ev =
        evaluate_with_recoveries(inst, paths[i], neighborhood_of(inst, all, all[i]), options);
    if (ev.value < best.value) {
      best.value = ev.value;
      best.first_stage = paths[i];
      best.second_stage = ev.recovery;
      best.witness = ev.witness;
    }
  }
  best.solver = "oracle";
  return best;
}

PathValue oracle_incremental(const Instance& inst, const Path& x, const Scenario& scenario,
                             std::size_t cap) {
  require_st_path(inst.graph, x);
  const auto paths = enumerate_st_paths(inst.graph, cap);
  std::optional<PathValue> best;
  for (const Path& y : paths) {
    if (!neighborhood_contains(x, y, inst.neighborhood, inst.k)) continue;
    const double v = path_cost(y, scenario.cost);
    if (!best || v < best->value) best = PathValue{y, v};
  }
  if (!best) throw Error(ErrorKind::Infeasible, "neighborhood is empty");
  return std::move(*best);
}

PathValue oracle_csp(const CspInstance& inst, std::size_t cap) {
  validate_csp(inst);
  const auto paths = enumerate_st_paths(inst.graph, cap);
  std::optional<PathValue> best;
  for (const Path& p : paths) {
    long long total = 0;
    for (ArcId e : p.arcs) total += inst.time[static_cast<std::size_t>(e)];
    if (total > inst.limit) continue;
    const double v = path_cost(p, inst.cost);
    if (!best || v < best->value) best = PathValue{p, v};
  }
  if (!best)
    throw Error(ErrorKind::Infeasible,
                "no source-sink path within time limit " + std::to_string(inst.limit));
  return std::move(*best);
}

}  // namespace rrsp
