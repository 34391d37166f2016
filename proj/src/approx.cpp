#include "rrsp/approx.hpp"

#include <algorithm>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"
#include "rrsp/recsolve.hpp"

namespace rrsp {

double compute_alpha(const Instance& inst) {
  double alpha = 1.0;
  for (std::size_t e = 0; e < inst.nominal.size(); ++e) {
    const double lo = inst.nominal[e];
    const double hi = lo + inst.deviation[e];
    if (hi == 0.0) continue;
    if (lo == 0.0)
      throw Error(ErrorKind::AlphaZero,
                  "arc " + std::to_string(e) + " has zero nominal cost but positive deviation");
    alpha = std::min(alpha, lo / hi);
  }
  return alpha;
}

Scenario build_sprime(const Instance& inst) {
  const auto* c = std::get_if<ContinuousBudget>(&inst.uncertainty);
  if (!c) throw Error(ErrorKind::Validation, "S' is defined for continuous budgeted uncertainty");
  const double d = inst.total_deviation();
  if (d <= 0) throw Error(ErrorKind::DZero, "all deviations are zero");
  Scenario s;
  s.cost.resize(inst.nominal.size());
  for (std::size_t e = 0; e < s.cost.size(); ++e) {
    const double full = inst.nominal[e] + inst.deviation[e];
    const double spread = inst.nominal[e] + c->budget * inst.deviation[e] / d;
    s.cost[e] = std::min(full, spread);
  }
  return s;
}

namespace {

// Interval instance whose upper costs are exactly `costs`.
Instance fixed_scenario(const Instance& inst, const std::vector<double>& costs) {
  Instance out = inst;
  out.uncertainty = IntervalUncertainty{};
  out.nominal = costs;
  out.deviation.assign(costs.size(), 0.0);
  return out;
}

}  // namespace

ApproxResult approx_solve(const Instance& inst, const EvaluateOptions& options) {
  require_valid(inst);
  if (is_interval(inst.uncertainty))
    throw Error(ErrorKind::Validation, "approximation applies to budgeted uncertainty");
  if (!is_acyclic(inst.graph))
    throw Error(ErrorKind::UnsupportedStructure, "approximation needs an acyclic graph");
  for (double c : inst.first_stage)
    if (c < 0)
      throw Error(ErrorKind::Validation, "approximation bounds need nonnegative first-stage costs");

  const auto* continuous = std::get_if<ContinuousBudget>(&inst.uncertainty);
  const double d = inst.total_deviation();
  std::vector<double> representative = inst.nominal;
  if (continuous && d > 0) representative = build_sprime(inst).cost;

  const Solution rec = solve(fixed_scenario(inst, representative));
  ApproxResult out;
  out.first_stage = rec.first_stage;
  out.recovery = rec.second_stage;
  try {
    out.value = evaluate_objective(inst, out.first_stage, options).value;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Capacity) throw;
    out.value = adversarial_interval(inst, out.first_stage).value;
    out.value_exact = false;
  }

  try {
    out.certificates.push_back({"alpha", 1.0 / compute_alpha(inst)});
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::AlphaZero) throw;
  }
  if (continuous) {
    const double gamma_c = continuous->budget;
    if (gamma_c <= 0 || d <= 0) {
      out.certificates.push_back({"exact", 1.0});
    } else {
      out.certificates.push_back({"beta", 1.0 / std::min(1.0, gamma_c / d)});
      if (out.value_exact) {
        if (out.value <= 0) {
          out.certificates.push_back({"gamma", 1.0});
        } else if (gamma_c < out.value) {
          out.certificates.push_back({"gamma", 1.0 / (1.0 - gamma_c / out.value)});
        }
      }
    }
  } else if (std::get<DiscreteBudget>(inst.uncertainty).budget == 0 || d <= 0) {
    out.certificates.push_back({"exact", 1.0});
  }

  out.ratio = kInf;
  out.certificate = "none";
  for (const auto& c : out.certificates) {
    if (c.ratio < out.ratio) {
      out.ratio = c.ratio;
      out.certificate = c.kind;
    }
  }
  if (continuous && out.certificates.size() > 1) out.certificate = "best-of";
  return out;
}

}  // namespace rrsp
