#include "rrsp/error.hpp"

#include <string>

namespace rrsp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::CycleDetected: return "cycle-detected";
    case ErrorKind::NotSeriesParallel: return "not-series-parallel";
    case ErrorKind::UnsupportedStructure: return "unsupported-structure";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::AlphaZero: return "alpha-zero";
    case ErrorKind::DZero: return "d-zero";
    case ErrorKind::Unavailable: return "unavailable";
    case ErrorKind::SolverError: return "solver-error";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

std::string cycle_message(const std::vector<int>& cycle) {
  std::string msg = "graph contains a directed cycle:";
  for (int v : cycle) msg += " " + std::to_string(v);
  if (!cycle.empty()) msg += " " + std::to_string(cycle.front());
  return msg;
}

}  // namespace

CycleDetected::CycleDetected(std::vector<int> cycle)
    : Error(ErrorKind::CycleDetected, cycle_message(cycle)), cycle_(std::move(cycle)) {}

TooManyPaths::TooManyPaths(std::size_t cap)
    : Error(ErrorKind::Capacity,
            "more than " + std::to_string(cap) + " source-sink paths"),
      cap_(cap) {}

}  // namespace rrsp
