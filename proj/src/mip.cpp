#include "rrsp/mip.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"

namespace rrsp {

int MipModel::add_variable(Variable v) {
  variables.push_back(std::move(v));
  return static_cast<int>(variables.size()) - 1;
}

void MipModel::add_constraint(Constraint c) {
  if (!c.terms.empty()) constraints.push_back(std::move(c));
}

std::optional<int> MipModel::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::size_t MipModel::count(VarRole role) const {
  std::size_t n = 0;
  for (const auto& v : variables) n += v.role == role;
  return n;
}

std::size_t MipModel::binary_count() const {
  std::size_t n = 0;
  for (const auto& v : variables) n += v.type == VarType::Binary;
  return n;
}

void MipModel::validate() const {
  if (constraints.empty()) throw Error(ErrorKind::Validation, "model has no constraints");
  std::unordered_set<std::string> names;
  for (const auto& v : variables) {
    if (!names.insert(v.name).second)
      throw Error(ErrorKind::Validation, "duplicate variable name " + v.name);
    if (v.type == VarType::Binary && (v.lower != 0.0 || v.upper != 1.0))
      throw Error(ErrorKind::Validation, "binary variable " + v.name + " must have bounds {0,1}");
    if (v.lower > v.upper)
      throw Error(ErrorKind::Validation, "variable " + v.name + " has empty bounds");
  }
  const auto n = static_cast<int>(variables.size());
  auto check = [&](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& t : terms)
      if (t.var < 0 || t.var >= n)
        throw Error(ErrorKind::Validation, where + " references a missing variable");
  };
  check(objective, "objective");
  for (const auto& c : constraints) check(c.terms, "constraint " + c.name);
}

namespace {

std::string arc_suffix(ArcId e) { return "_e" + std::to_string(e); }

struct FlowVars {
  std::vector<int> id;  // per arc
};

FlowVars add_arc_vars(MipModel& model, const Instance& inst, const std::string& prefix,
                      VarType type, VarRole role, int block) {
  FlowVars out;
  for (ArcId e = 0; e < inst.graph.arc_count(); ++e) {
    Variable v;
    v.name = prefix + arc_suffix(e);
    v.type = type;
    v.role = role;
    v.block = block;
    v.arc = e;
    out.id.push_back(model.add_variable(std::move(v)));
  }
  return out;
}

// Unit flow from source to sink, or a flow of value `scale` when given.
void add_flow_balance(MipModel& model, const Instance& inst, const FlowVars& vars,
                      const std::string& prefix, int scale = -1) {
  const Multidigraph& g = inst.graph;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Constraint c;
    c.name = prefix + "_n" + std::to_string(v);
    c.sense = Sense::Eq;
    for (ArcId e : g.out_arcs(v)) c.terms.push_back({vars.id[static_cast<std::size_t>(e)], 1.0});
    for (ArcId e : g.in_arcs(v)) c.terms.push_back({vars.id[static_cast<std::size_t>(e)], -1.0});
    const double supply = v == g.source() ? 1.0 : (v == g.sink() ? -1.0 : 0.0);
    if (scale < 0) {
      c.rhs = supply;
    } else if (supply != 0.0) {
      c.terms.push_back({scale, -supply});
    }
    model.add_constraint(std::move(c));
  }
}

// z <= x, z <= y and the neighborhood budget row.
void add_neighborhood(MipModel& model, const Instance& inst, const FlowVars& x,
                      const FlowVars& y, const FlowVars& z, const std::string& tag) {
  const auto m = static_cast<std::size_t>(inst.graph.arc_count());
  for (std::size_t e = 0; e < m; ++e) {
    const std::string arc = arc_suffix(static_cast<ArcId>(e));
    model.add_constraint({"zx" + tag + arc, {{z.id[e], 1.0}, {x.id[e], -1.0}}, Sense::Le, 0.0});
    model.add_constraint({"zy" + tag + arc, {{z.id[e], 1.0}, {y.id[e], -1.0}}, Sense::Le, 0.0});
  }
  Constraint budget;
  budget.name = "nb" + tag;
  budget.sense = Sense::Le;
  budget.rhs = static_cast<double>(inst.k);
  for (std::size_t e = 0; e < m; ++e) {
    switch (inst.neighborhood) {
      case NeighborhoodKind::Incl:
        budget.terms.push_back({y.id[e], 1.0});
        budget.terms.push_back({z.id[e], -1.0});
        break;
      case NeighborhoodKind::Excl:
        budget.terms.push_back({x.id[e], 1.0});
        budget.terms.push_back({z.id[e], -1.0});
        break;
      case NeighborhoodKind::Sym:
        budget.terms.push_back({x.id[e], 1.0});
        budget.terms.push_back({y.id[e], 1.0});
        budget.terms.push_back({z.id[e], -2.0});
        break;
    }
  }
  model.add_constraint(std::move(budget));
}

}  // namespace

MipModel build_interval_mip(const Instance& inst) {
  require_valid(inst);
  if (!is_interval(inst.uncertainty))
    throw Error(ErrorKind::Validation, "the interval model needs interval uncertainty");
  MipModel model;
  model.name = inst.label.empty() ? "rrsp_interval" : inst.label;
  const auto x = add_arc_vars(model, inst, "x", VarType::Binary, VarRole::X, -1);
  const auto y = add_arc_vars(model, inst, "y", VarType::Binary, VarRole::Y, -1);
  const auto z = add_arc_vars(model, inst, "z", VarType::Continuous, VarRole::Z, -1);
  const auto upper = inst.upper_costs();
  for (std::size_t e = 0; e < x.id.size(); ++e) {
    model.objective.push_back({x.id[e], inst.first_stage[e]});
    model.objective.push_back({y.id[e], upper[e]});
  }
  add_flow_balance(model, inst, x, "bx");
  add_flow_balance(model, inst, y, "by");
  add_neighborhood(model, inst, x, y, z, "");
  model.validate();
  return model;
}

MipModel build_continuous_budget_mip(const Instance& inst) {
  require_valid(inst);
  const auto* budget = std::get_if<ContinuousBudget>(&inst.uncertainty);
  if (!budget)
    throw Error(ErrorKind::Validation,
                "the budgeted model needs continuous budgeted uncertainty");
  MipModel model;
  model.name = inst.label.empty() ? "rrsp_cont_budget" : inst.label;
  const auto m = static_cast<std::size_t>(inst.graph.arc_count());
  const int blocks = static_cast<int>(m) + 1;

  const auto x = add_arc_vars(model, inst, "x", VarType::Binary, VarRole::X, -1);
  add_flow_balance(model, inst, x, "bx");
  for (std::size_t e = 0; e < m; ++e) model.objective.push_back({x.id[e], inst.first_stage[e]});

  std::vector<int> lambda;
  for (int i = 0; i < blocks; ++i) {
    Variable v;
    v.name = "lambda_" + std::to_string(i);
    v.role = VarRole::Lambda;
    v.block = i;
    lambda.push_back(model.add_variable(std::move(v)));
  }
  std::vector<int> gamma;
  for (std::size_t e = 0; e < m; ++e) {
    Variable v;
    v.name = "gamma" + arc_suffix(static_cast<ArcId>(e));
    v.upper = kInf;
    v.role = VarRole::Gamma;
    v.arc = static_cast<ArcId>(e);
    gamma.push_back(model.add_variable(std::move(v)));
    model.objective.push_back({gamma.back(), inst.deviation[e]});
  }
  Variable theta_var;
  theta_var.name = "theta";
  theta_var.upper = kInf;
  theta_var.role = VarRole::Theta;
  const int theta = model.add_variable(std::move(theta_var));
  model.objective.push_back({theta, budget->budget});

  Constraint simplex{"lambda_sum", {}, Sense::Eq, 1.0};
  for (int id : lambda) simplex.terms.push_back({id, 1.0});
  model.add_constraint(std::move(simplex));
  // blocks are interchangeable; keep their weights sorted
  for (int i = 0; i + 1 < blocks; ++i) {
    const auto a = lambda[static_cast<std::size_t>(i)], b = lambda[static_cast<std::size_t>(i) + 1];
    model.add_constraint({"lo" + std::to_string(i), {{a, 1.0}, {b, -1.0}}, Sense::Ge, 0.0});
  }

  std::vector<FlowVars> w(static_cast<std::size_t>(blocks));
  for (int i = 0; i < blocks; ++i) {
    const std::string b = std::to_string(i);
    const auto y = add_arc_vars(model, inst, "y" + b, VarType::Binary, VarRole::Y, i);
    const auto z = add_arc_vars(model, inst, "z" + b, VarType::Continuous, VarRole::Z, i);
    w[static_cast<std::size_t>(i)] =
        add_arc_vars(model, inst, "w" + b, VarType::Continuous, VarRole::W, i);
    const auto& wi = w[static_cast<std::size_t>(i)];
    const int li = lambda[static_cast<std::size_t>(i)];
    for (std::size_t e = 0; e < m; ++e) {
      model.objective.push_back({wi.id[e], inst.nominal[e]});
      const std::string tag = b + arc_suffix(static_cast<ArcId>(e));
      model.add_constraint({"wl" + tag, {{wi.id[e], 1.0}, {li, -1.0}}, Sense::Le, 0.0});
      model.add_constraint({"wy" + tag, {{wi.id[e], 1.0}, {y.id[e], -1.0}}, Sense::Le, 0.0});
      model.add_constraint(
          {"wlb" + tag, {{wi.id[e], 1.0}, {li, -1.0}, {y.id[e], -1.0}}, Sense::Ge, -1.0});
    }
    add_flow_balance(model, inst, y, "by" + b);
    add_flow_balance(model, inst, wi, "bw" + b, li);
    add_neighborhood(model, inst, x, y, z, b);
  }
  for (std::size_t e = 0; e < m; ++e) {
    Constraint dual{"dual" + arc_suffix(static_cast<ArcId>(e)), {}, Sense::Ge, 0.0};
    dual.terms.push_back({gamma[e], 1.0});
    dual.terms.push_back({theta, 1.0});
    for (const auto& wi : w) dual.terms.push_back({wi.id[e], -1.0});
    model.add_constraint(std::move(dual));
  }
  model.validate();
  return model;
}

// ---------------------------------------------------------------------------

namespace {

std::string number(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class LineWriter {
 public:
  explicit LineWriter(std::string& out) : out_(out) {}

  void start(const std::string& head) {
    out_ += head;
    width_ = head.size();
  }
  void piece(const std::string& text) {
    if (width_ + text.size() + 1 > 200) {
      out_ += "\n   ";
      width_ = 3;
    }
    out_ += ' ';
    out_ += text;
    width_ += text.size() + 1;
  }
  void end() { out_ += '\n'; }

 private:
  std::string& out_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& line, const MipModel& model, const std::vector<Term>& terms) {
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    std::string text;
    const double mag = std::abs(t.coef);
    if (t.coef < 0) text = "- ";
    else if (!first) text = "+ ";
    if (mag != 1.0) text += number(mag) + " ";
    text += model.variables[static_cast<std::size_t>(t.var)].name;
    line.piece(text);
    first = false;
  }
  if (first) line.piece("0 " + model.variables.front().name);
}

}  // namespace

std::string export_lp(const MipModel& model) {
  model.validate();
  std::string out;
  out += "\\ " + model.name + "\n";
  out += "Minimize\n";
  LineWriter line(out);
  line.start(" obj:");
  write_terms(line, model, model.objective);
  line.end();
  out += "Subject To\n";
  for (const auto& c : model.constraints) {
    line.start(" " + c.name + ":");
    write_terms(line, model, c.terms);
    switch (c.sense) {
      case Sense::Le: line.piece("<="); break;
      case Sense::Ge: line.piece(">="); break;
      case Sense::Eq: line.piece("="); break;
    }
    line.piece(number(c.rhs));
    line.end();
  }
  out += "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.type == VarType::Binary) continue;
    if (v.lower == 0.0 && v.upper == kInf) continue;
    out += " " + number(v.lower) + " <= " + v.name + " <= " + number(v.upper) + "\n";
  }
  out += "Binaries\n";
  line.start("");
  bool any = false;
  for (const auto& v : model.variables) {
    if (v.type != VarType::Binary) continue;
    line.piece(v.name);
    any = true;
  }
  if (any) line.end();
  out += "End\n";
  return out;
}

void write_lp_file(const MipModel& model, const std::string& path) {
  const std::string text = export_lp(model);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error(ErrorKind::Io, "failed writing " + path);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<double> to_number(const std::string& text) {
  if (text == "inf" || text == "Infinity") return kInf;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') return std::nullopt;
  return v;
}

bool is_integer(const std::string& text) {
  return !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

MipSolution parse_solution_text(std::string_view text) {
  MipSolution sol;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  bool objective_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (const auto pos = line.find("objective value"); pos != std::string::npos) {
      std::istringstream head(line);
      head >> sol.status;
      std::istringstream rest(line.substr(pos + std::string_view("objective value").size()));
      std::string field;
      rest >> field;
      const auto value = to_number(field);
      if (!value) throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": bad objective");
      sol.objective = *value;
      header_seen = objective_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (!tok.empty() && tok.front() == "**") tok.erase(tok.begin());
    if (tok.size() >= 3 && is_integer(tok[0])) tok.erase(tok.begin());
    if (tok.size() < 2)
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected name and value");
    const auto value = to_number(tok[1]);
    if (!value)
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": bad value '" + tok[1] + "'");
    sol.values[tok[0]] = *value;
  }
  if (!header_seen && sol.values.empty()) throw Error(ErrorKind::Parse, "empty solution file");
  if (!objective_seen) sol.status = "Optimal";
  if (sol.status != "Optimal")
    throw Error(ErrorKind::SolverError, "solver reported status '" + sol.status + "'");
  return sol;
}

std::optional<std::string> configured_solver(const SolverConfig& config) {
  if (!config.command.empty()) return config.command;
  if (const char* env = std::getenv("RRSP_SOLVER_CMD"); env && *env) return std::string(env);
  return std::nullopt;
}

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

}  // namespace

MipSolution run_external_solver(const MipModel& model, const SolverConfig& config) {
  const auto command = configured_solver(config);
  if (!command) throw Error(ErrorKind::Unavailable, "no MIP solver configured (RRSP_SOLVER_CMD)");

  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() /
                       ("rrsp-mip-" + std::to_string(rd()) + std::to_string(rd()));
  fs::create_directories(dir);
  const fs::path input = dir / "model.lp";
  const fs::path output = dir / "model.sol";
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{dir};

  write_lp_file(model, input.string());
  std::string cmd = *command;
  replace_all(cmd, "{input}", input.string());
  replace_all(cmd, "{output}", output.string());
  replace_all(cmd, "{timelimit}", std::to_string(config.time_limit.count()));
  cmd += " > " + (dir / "solver.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status != 0)
    throw Error(ErrorKind::SolverError, "solver exited with status " + std::to_string(status));

  std::ifstream file(output);
  if (!file) throw Error(ErrorKind::Parse, "solver wrote no solution file");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_solution_text(buf.str());
}

namespace {

Path decode_path(const Instance& inst, const std::vector<char>& chosen, const char* stage) {
  const Multidigraph& g = inst.graph;
  Path path;
  std::vector<char> used(chosen.size(), 0);
  NodeId at = g.source();
  while (at != g.sink()) {
    ArcId next = -1;
    for (ArcId e : g.out_arcs(at)) {
      if (chosen[static_cast<std::size_t>(e)] && !used[static_cast<std::size_t>(e)]) {
        next = e;
        break;
      }
    }
    if (next < 0 || path.size() > chosen.size())
      throw Error(ErrorKind::SolverError, std::string(stage) + " variables do not form a path");
    used[static_cast<std::size_t>(next)] = 1;
    path.arcs.push_back(next);
    at = g.arc(next).head;
  }
  for (std::size_t e = 0; e < chosen.size(); ++e)
    if (chosen[e] && !used[e])
      throw Error(ErrorKind::SolverError,
                  std::string(stage) + " variables contain arcs off the path");
  return path;
}

}  // namespace

Solution decode_solution(const Instance& inst, const MipModel& model, const MipSolution& sol) {
  const auto m = static_cast<std::size_t>(inst.graph.arc_count());
  std::vector<char> x(m, 0);
  std::vector<std::vector<char>> y;
  std::vector<double> weight;
  for (const auto& v : model.variables) {
    const auto it = sol.values.find(v.name);
    const double value = it == sol.values.end() ? 0.0 : it->second;
    if (v.role == VarRole::X && value > 0.5) x[static_cast<std::size_t>(v.arc)] = 1;
    if (v.role == VarRole::Y) {
      const auto b = static_cast<std::size_t>(std::max(v.block, 0));
      if (y.size() <= b) y.resize(b + 1, std::vector<char>(m, 0));
      if (value > 0.5) y[b][static_cast<std::size_t>(v.arc)] = 1;
    }
    if (v.role == VarRole::Lambda) {
      const auto b = static_cast<std::size_t>(v.block);
      if (weight.size() <= b) weight.resize(b + 1, 0.0);
      weight[b] = value;
    }
  }
  Solution out;
  out.first_stage = decode_path(inst, x, "first-stage");
  std::size_t pick = 0;
  for (std::size_t b = 1; b < weight.size(); ++b)
    if (weight[b] > weight[pick]) pick = b;
  out.second_stage = decode_path(inst, y.at(pick), "second-stage");
  out.value = sol.objective;
  out.solver = "mip";
  if (!neighborhood_contains(out.first_stage, out.second_stage, inst.neighborhood, inst.k))
    throw Error(ErrorKind::SolverError, "decoded second-stage path violates the neighborhood");
  return out;
}

}  // namespace rrsp
