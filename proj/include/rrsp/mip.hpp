#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"

namespace rrsp {

enum class VarType : std::uint8_t { Continuous, Binary };

/// What a variable stands for in the formulation.
enum class VarRole : std::uint8_t { X, Y, Z, W, Lambda, Gamma, Theta };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  VarType type = VarType::Continuous;
  VarRole role = VarRole::X;
  int block = -1;  // second-stage block index, -1 when not blocked
  ArcId arc = -1;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Sense : std::uint8_t { Le, Ge, Eq };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::Le;
  double rhs = 0.0;
};

struct MipModel {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;  // minimized

  int add_variable(Variable v);
  void add_constraint(Constraint c);
  std::optional<int> find(std::string_view name) const;
  std::size_t count(VarRole role) const;
  std::size_t binary_count() const;

  /// Throws Error(Validation) on dangling references, duplicate names,
  /// binaries with bounds other than {0,1}, or an empty constraint set.
  void validate() const;
};

/// Flow formulation for interval uncertainty; accepts any digraph.
MipModel build_interval_mip(const Instance& inst);

/// Dualized formulation for continuous budgeted uncertainty with m+1
/// second-stage blocks. Products lambda_i * y_ie are linearized by w_ie.
MipModel build_continuous_budget_mip(const Instance& inst);

/// CPLEX LP text; byte-identical for identical models.
std::string export_lp(const MipModel& model);
void write_lp_file(const MipModel& model, const std::string& path);

struct MipSolution {
  std::string status;
  double objective = 0.0;
  std::map<std::string, double> values;
};

/// Parses a CBC "solu" file or a plain "name value" listing.
/// Throws Error(Parse) on malformed input and Error(SolverError) when the
/// solver reports a non-optimal status.
MipSolution parse_solution_text(std::string_view text);

struct SolverConfig {
  /// Shell template with {input}, {output} and {timelimit} placeholders.
  /// Empty means: read RRSP_SOLVER_CMD from the environment.
  std::string command;
  std::chrono::seconds time_limit{60};
};

/// Resolved command template, or nullopt when no solver is configured.
std::optional<std::string> configured_solver(const SolverConfig& config);

/// Throws Error(Unavailable) when no solver is configured, Error(SolverError)
/// on a nonzero exit status, Error(Parse) on an unreadable solution file.
MipSolution run_external_solver(const MipModel& model, const SolverConfig& config);

/// Reads the first-stage path (and for the interval model the second-stage
/// path) back out of a solution and re-checks it against the instance.
Solution decode_solution(const Instance& inst, const MipModel& model, const MipSolution& sol);

}  // namespace rrsp
