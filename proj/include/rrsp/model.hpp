#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rrsp/graph.hpp"

namespace rrsp {

enum class NeighborhoodKind { Incl, Excl, Sym };

std::string_view to_string(NeighborhoodKind kind) noexcept;
std::optional<NeighborhoodKind> parse_neighborhood(std::string_view text);

struct IntervalUncertainty {
  friend bool operator==(const IntervalUncertainty&, const IntervalUncertainty&) = default;
};

/// At most `budget` arcs deviate from their nominal cost.
struct DiscreteBudget {
  int budget = 0;
  friend bool operator==(const DiscreteBudget&, const DiscreteBudget&) = default;
};

/// Total deviation over all arcs is at most `budget`.
struct ContinuousBudget {
  double budget = 0.0;
  friend bool operator==(const ContinuousBudget&, const ContinuousBudget&) = default;
};

using Uncertainty = std::variant<IntervalUncertainty, DiscreteBudget, ContinuousBudget>;

std::string describe(const Uncertainty& u);

inline bool is_interval(const Uncertainty& u) {
  return std::holds_alternative<IntervalUncertainty>(u);
}

struct Instance {
  Multidigraph graph;
  std::vector<double> first_stage;  // C
  std::vector<double> nominal;      // c-hat
  std::vector<double> deviation;    // Delta
  int k = 0;
  NeighborhoodKind neighborhood = NeighborhoodKind::Incl;
  Uncertainty uncertainty = IntervalUncertainty{};
  std::string label;

  std::int32_t arc_count() const noexcept { return graph.arc_count(); }
  /// c-bar = c-hat + Delta, computed on demand.
  std::vector<double> upper_costs() const;
  double total_deviation() const;
};

struct Scenario {
  std::vector<double> cost;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Solution {
  Path first_stage;
  Path second_stage;
  double value = 0.0;
  std::string solver;
  std::optional<Scenario> witness;
};

/// Set semantics on arc ids; parallel arcs are distinct elements.
bool neighborhood_contains(const Path& x, const Path& y, NeighborhoodKind kind, int k);

/// Number of arcs in `a` that are not in `b`.
int count_missing(const Path& a, const Path& b);

Scenario upper_bound_scenario(const Instance& inst);
Scenario nominal_scenario(const Instance& inst);

/// Empty when the instance is well formed.
std::vector<std::string> validate_instance(const Instance& inst);
/// Throws Error(Validation) listing every violation.
void require_valid(const Instance& inst);

/// Membership in the instance's uncertainty set, up to absolute tolerance.
bool scenario_in_uncertainty_set(const Instance& inst, const Scenario& s,
                                 double tol = 1e-9);

/// C(X) + c-bar(Y) with no feasibility checks.
double interval_pair_value(const Instance& inst, const Path& x, const Path& y);

/// Checks path validity, neighborhood membership, and, for interval
/// instances, that the stored value matches the recomputed pair value.
std::vector<std::string> check_solution(const Instance& inst, const Solution& sol);

/// Copy of `inst` with the uncertainty replaced.
Instance with_uncertainty(const Instance& inst, Uncertainty u);
/// Copy of `inst` with a new recovery parameter and neighborhood.
Instance with_neighborhood(const Instance& inst, NeighborhoodKind kind, int k);

}  // namespace rrsp
