#pragma once

#include <string>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"
#include "rrsp/secondstage.hpp"

namespace rrsp {

/// min over arcs of c-hat / (c-hat + Delta), with 0/0 read as 1.
/// Throws Error(AlphaZero) when an arc has c-hat = 0 < Delta.
double compute_alpha(const Instance& inst);

/// c'_e = min(c-hat_e + Delta_e, c-hat_e + Gamma * Delta_e / D) with D = sum of
/// deviations. Throws Error(DZero) when D = 0.
Scenario build_sprime(const Instance& inst);

struct Certificate {
  std::string kind;  // "alpha", "beta", "gamma" or "exact"
  double ratio = 1.0;
};

struct ApproxResult {
  Path first_stage;
  Path recovery;
  /// F of the chosen path; an upper bound when `value_exact` is false.
  double value = 0.0;
  bool value_exact = true;
  double ratio = 1.0;
  std::string certificate;  // kind of the smallest ratio, or "best-of"
  std::vector<Certificate> certificates;
};

/// Solves the interval problem under a single representative scenario and
/// certifies how far its F value can be from the optimum. Requires an acyclic
/// graph, budgeted uncertainty and nonnegative first-stage costs.
ApproxResult approx_solve(const Instance& inst, const EvaluateOptions& options = {});

}  // namespace rrsp
