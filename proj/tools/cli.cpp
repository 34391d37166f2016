#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <rrsp/approx.hpp>
#include <rrsp/gen.hpp>
#include <rrsp/instance_io.hpp>
#include <rrsp/mip.hpp>
#include <rrsp/numeric.hpp>
#include <rrsp/oracle.hpp>
#include <rrsp/recsolve.hpp>
#include <rrsp/secondstage.hpp>

namespace rrsp::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return kUsage;
    case ErrorKind::Validation:
    case ErrorKind::Parse:
    case ErrorKind::Infeasible:
    case ErrorKind::AlphaZero:
    case ErrorKind::DZero: return kValidation;
    case ErrorKind::CycleDetected:
    case ErrorKind::NotSeriesParallel:
    case ErrorKind::UnsupportedStructure: return kUnsupported;
    case ErrorKind::Capacity: return kCapacity;
    case ErrorKind::Io:
    case ErrorKind::Unavailable:
    case ErrorKind::SolverError: return kIo;
  }
  return kValidation;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string show_path(const Multidigraph& g, const Path& p) {
  std::string nodes;
  for (NodeId v : path_nodes(g, p)) {
    if (!nodes.empty()) nodes += '>';
    nodes += g.node_label(v);
  }
  return format_path(p) + " " + nodes;
}

std::string show_costs(const std::vector<double>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + num(c[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string file;
  std::string method = "auto";
  bool parallel = false;
  std::size_t cap = kDefaultPathCap;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.file);
  const auto method = parse_method(a.method);
  if (!method) throw Error(ErrorKind::Usage, "unknown method " + a.method);
  const auto start = Clock::now();
  Solution s;
  if (*method == Method::Oracle && !is_interval(inst.uncertainty)) {
    s = oracle_recrob(inst, a.cap);
  } else {
    s = solve(inst, {.method = *method, .parallel = a.parallel, .oracle_cap = a.cap});
  }
  const double ms = elapsed_ms(start);
  out << "value: " << num(s.value) << "\n";
  out << "first_stage: " << show_path(inst.graph, s.first_stage) << "\n";
  out << "second_stage: " << show_path(inst.graph, s.second_stage) << "\n";
  if (s.witness) out << "witness: " << show_costs(s.witness->cost) << "\n";
  out << "method: " << s.solver << "\n";
  err << "wall_ms: " << num(ms) << "\n";
  return kOk;
}

struct EvaluateArgs {
  std::string file;
  std::string path;
  std::size_t cap = kDefaultPathCap;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.file);
  const Path x = parse_path_spec(inst.graph, a.path);
  require_st_path(inst.graph, x);
  const auto start = Clock::now();
  Evaluation ev;
  if (is_acyclic(inst.graph)) {
    ev = evaluate_objective(inst, x, {.path_cap = a.cap});
  } else {
    std::vector<Path> recoveries;
    for (auto& y : enumerate_st_paths(inst.graph, a.cap))
      if (neighborhood_contains(x, y, inst.neighborhood, inst.k)) recoveries.push_back(std::move(y));
    ev = evaluate_with_recoveries(inst, x, recoveries, {.path_cap = a.cap});
  }
  out << "value: " << num(ev.value) << "\n";
  out << "first_stage: " << show_path(inst.graph, x) << "\n";
  out << "recovery: " << show_path(inst.graph, ev.recovery) << "\n";
  out << "witness: " << show_costs(ev.witness.cost) << "\n";
  out << "method: " << ev.method << "\n";
  err << "wall_ms: " << num(elapsed_ms(start)) << "\n";
  return kOk;
}

int cmd_approx(const std::string& file, std::size_t cap, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(file);
  const auto start = Clock::now();
  const auto r = approx_solve(inst, {.path_cap = cap});
  out << "first_stage: " << show_path(inst.graph, r.first_stage) << "\n";
  out << "recovery: " << show_path(inst.graph, r.recovery) << "\n";
  out << "value: " << num(r.value) << "\n";
  out << "value_exact: " << (r.value_exact ? "true" : "false") << "\n";
  for (const auto& c : r.certificates) out << "certificate " << c.kind << ": " << num(c.ratio) << "\n";
  out << "ratio: " << num(r.ratio) << "\n";
  out << "certificate_kind: " << r.certificate << "\n";
  err << "wall_ms: " << num(elapsed_ms(start)) << "\n";
  return kOk;
}

struct ExportArgs {
  std::string file;
  std::string out_path;
  std::string model = "auto";
  bool solve = false;
  int time_limit = 60;
};

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream&) {
  const Instance inst = load_instance(a.file);
  std::string kind = a.model;
  if (kind == "auto") kind = is_interval(inst.uncertainty) ? "interval" : "cont-budget";
  MipModel model;
  if (kind == "interval") model = build_interval_mip(inst);
  else if (kind == "cont-budget") model = build_continuous_budget_mip(inst);
  else throw Error(ErrorKind::Usage, "unknown model " + a.model);
  write_lp_file(model, a.out_path);
  out << "model: " << kind << "\n";
  out << "variables: " << model.variables.size() << "\n";
  out << "binaries: " << model.binary_count() << "\n";
  out << "constraints: " << model.constraints.size() << "\n";
  out << "wrote: " << a.out_path << "\n";
  if (a.solve) {
    SolverConfig config;
    config.time_limit = std::chrono::seconds(a.time_limit);
    const auto sol = decode_solution(inst, model, run_external_solver(model, config));
    out << "value: " << num(sol.value) << "\n";
    out << "first_stage: " << show_path(inst.graph, sol.first_stage) << "\n";
    out << "second_stage: " << show_path(inst.graph, sol.second_stage) << "\n";
  }
  return kOk;
}

struct GenerateArgs {
  std::string family = "layered";
  std::string gadget;
  std::uint64_t seed = 1;
  int layers = 4;
  int width = 3;
  double density = 0.6;
  int nodes = 8;
  double probability = 0.4;
  int leaves = 16;
  double series_bias = 0.5;
  int pairs = 2;
  std::vector<double> c_range{0, 10};
  std::vector<double> nominal_range{0, 10};
  std::vector<double> deviation_range{0, 5};
  bool real = false;
  int k_min = 1;
  int k_max = 1;
  std::string neighborhood = "incl";
  std::string budget_kind = "interval";
  double budget = 0;
  bool relative = false;
  std::string out_path = "-";
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (!a.gadget.empty()) {
    const auto kv = random_kvdp(a.nodes, a.pairs, a.probability, a.seed);
    if (a.gadget == "recsp-incl") {
      inst = gadget_recsp_incl(kv);
    } else if (a.gadget == "incsp-excl") {
      auto g = gadget_incsp_excl(kv);
      inst = std::move(g.instance);
      err << "fixed first stage: " << show_path(inst.graph, g.first_stage) << "\n";
    } else if (a.gadget == "recrob-discrete") {
      inst = gadget_recrob_discrete(kv);
    } else {
      throw Error(ErrorKind::Usage, "unknown gadget " + a.gadget);
    }
    err << "disjoint paths: " << (disjoint_paths_exist(kv) ? "yes" : "no") << "\n";
  } else {
    GenParams p;
    if (a.family == "layered") p.family = LayeredFamily{a.layers, a.width, a.density};
    else if (a.family == "random-dag") p.family = RandomDagFamily{a.nodes, a.probability};
    else if (a.family == "asp") p.family = AspFamily{a.leaves, a.series_bias};
    else throw Error(ErrorKind::Usage, "unknown family " + a.family);
    p.first_stage = {a.c_range[0], a.c_range[1]};
    p.nominal = {a.nominal_range[0], a.nominal_range[1]};
    p.deviation = {a.deviation_range[0], a.deviation_range[1]};
    p.integral = !a.real;
    p.k_min = a.k_min;
    p.k_max = std::max(a.k_min, a.k_max);
    const auto kind = parse_neighborhood(a.neighborhood);
    if (!kind) throw Error(ErrorKind::Usage, "unknown neighborhood " + a.neighborhood);
    p.neighborhood = *kind;
    if (a.budget_kind == "interval") p.budget.kind = BudgetKind::Interval;
    else if (a.budget_kind == "discrete") p.budget.kind = BudgetKind::Discrete;
    else if (a.budget_kind == "continuous") p.budget.kind = BudgetKind::Continuous;
    else throw Error(ErrorKind::Usage, "unknown budget kind " + a.budget_kind);
    p.budget.value = a.budget;
    p.budget.relative = a.relative;
    p.seed = a.seed;
    inst = generate(p);
  }
  if (a.out_path == "-") {
    out << serialize_instance(inst);
  } else {
    save_instance(inst, a.out_path);
    out << "wrote: " << a.out_path << " (" << inst.graph.node_count() << " nodes, "
        << inst.graph.arc_count() << " arcs)\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchCase {
  std::string id;
  std::string family;
  GenParams params;
};

struct BenchRow {
  std::string text;
  bool disagree = false;
};

std::vector<BenchCase> expand_suite(const nlohmann::json& suite) {
  auto get_list = [](const nlohmann::json& j, const char* key, nlohmann::json fallback) {
    return j.contains(key) ? j.at(key) : fallback;
  };
  const std::uint64_t seed = suite.value("seed", std::uint64_t{1});
  const int repeats = suite.value("repeats", 1);
  const auto ks = get_list(suite, "k", nlohmann::json::array({0, 1, 2}));
  const auto kinds = get_list(suite, "neighborhoods", nlohmann::json::array({"incl", "excl", "sym"}));
  const auto costs = suite.value("costs", nlohmann::json::object());
  if (!suite.contains("families") || !suite.at("families").is_array())
    throw Error(ErrorKind::Parse, "bench suite needs a \"families\" array");

  std::vector<BenchCase> cases;
  std::uint64_t counter = 0;
  for (const auto& fam : suite.at("families")) {
    const std::string family = fam.at("family").get<std::string>();
    for (const auto& size_j : fam.at("sizes")) {
      const int size = size_j.get<int>();
      for (const auto& k_j : ks)
        for (const auto& kind_j : kinds)
          for (int r = 0; r < repeats; ++r) {
            BenchCase c;
            c.family = family;
            GenParams& p = c.params;
            if (family == "layered")
              p.family = LayeredFamily{size, fam.value("width", 3), fam.value("density", 0.6)};
            else if (family == "random-dag")
              p.family = RandomDagFamily{size, fam.value("probability", 0.4)};
            else if (family == "asp")
              p.family = AspFamily{size, fam.value("series_bias", 0.5)};
            else
              throw Error(ErrorKind::Parse, "unknown bench family " + family);
            if (costs.contains("C")) p.first_stage = {costs["C"][0], costs["C"][1]};
            if (costs.contains("c_hat")) p.nominal = {costs["c_hat"][0], costs["c_hat"][1]};
            if (costs.contains("delta")) p.deviation = {costs["delta"][0], costs["delta"][1]};
            p.k_min = p.k_max = k_j.get<int>();
            const auto kind = parse_neighborhood(kind_j.get<std::string>());
            if (!kind) throw Error(ErrorKind::Parse, "unknown neighborhood in bench suite");
            p.neighborhood = *kind;
            p.seed = seed + counter++;
            c.id = family + "-n" + std::to_string(size) + "-k" + std::to_string(p.k_min) + "-" +
                   std::string(to_string(*kind)) + "-r" + std::to_string(r);
            cases.push_back(std::move(c));
          }
    }
  }
  return cases;
}

BenchRow run_case(const BenchCase& c, const std::vector<Method>& methods, std::size_t cap,
                  bool parallel) {
  const Instance inst = generate(c.params);
  std::optional<double> oracle;
  try {
    oracle = oracle_recsp(inst, cap).value;
  } catch (const TooManyPaths&) {
  }
  const auto cls = classify(inst.graph);
  BenchRow row;
  std::ostringstream csv;
  for (Method m : methods) {
    if (m == Method::Layered && !cls.layered) continue;
    if (m == Method::Asp && !cls.tree) continue;
    if (m == Method::MinMax && inst.k != 0) continue;
    if (m == Method::Oracle && !oracle) continue;
    const auto start = Clock::now();
    const Solution s = solve(inst, {.method = m, .parallel = parallel, .oracle_cap = cap});
    const double ms = elapsed_ms(start);
    std::string agree;
    if (oracle) {
      const bool ok = approx_equal(s.value, *oracle) && check_solution(inst, s).empty();
      agree = ok ? "yes" : "no";
      row.disagree = row.disagree || !ok;
    }
    csv << c.id << ',' << c.family << ',' << inst.graph.node_count() << ',' << inst.graph.arc_count()
        << ',' << inst.k << ',' << to_string(inst.neighborhood) << ',' << s.solver << ','
        << num(s.value) << ',' << (oracle ? num(*oracle) : "") << ',' << num(ms) << ',' << agree
        << '\n';
  }
  row.text = csv.str();
  return row;
}

struct BenchArgs {
  std::string suite;
  std::string out_path;
  int jobs = 1;
  bool parallel = false;
  bool strict = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.suite);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + a.suite);
  nlohmann::json suite;
  try {
    suite = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, a.suite + ": " + e.what());
  }
  std::vector<BenchCase> cases;
  std::vector<Method> methods;
  std::size_t cap = 2000;
  try {
    cases = expand_suite(suite);
    for (const auto& m : suite.value("methods", nlohmann::json::array({"auto", "acyclic"}))) {
      const auto parsed = parse_method(m.get<std::string>());
      if (!parsed) throw Error(ErrorKind::Parse, "unknown method in bench suite");
      methods.push_back(*parsed);
    }
    cap = suite.value("oracle_cap", std::size_t{2000});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, a.suite + ": " + e.what());
  }

  std::vector<BenchRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex fail_mu;
  std::optional<Error> failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        rows[i] = run_case(cases[i], methods, cap, a.parallel);
      } catch (const Error& e) {
        std::lock_guard lock(fail_mu);
        if (!failure) failure = e;
      }
    }
  };
  const int jobs = std::max(1, a.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) throw *failure;

  std::ofstream csv(a.out_path);
  if (!csv) throw Error(ErrorKind::Io, "cannot write " + a.out_path);
  csv << "instance_id,family,n,m,k,kind,method,value,oracle_value,wall_ms,agree\n";
  std::size_t disagreements = 0;
  for (const auto& r : rows) {
    csv << r.text;
    disagreements += r.disagree;
  }
  if (!csv) throw Error(ErrorKind::Io, "write failed for " + a.out_path);
  out << "instances: " << cases.size() << "\n";
  out << "disagreements: " << disagreements << "\n";
  out << "wrote: " << a.out_path << "\n";
  if (disagreements) err << "solver values differ from the oracle on " << disagreements << " instances\n";
  return a.strict && disagreements ? kValidation : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recoverable robust shortest path solver"};
  app.name("rrsp");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the interval problem exactly");
  solve_cmd->add_option("file", solve_args.file, "Instance file")->required();
  solve_cmd->add_option("--method", solve_args.method, "auto|minmax|layered|acyclic|asp|oracle")
      ->check(CLI::IsMember({"auto", "minmax", "layered", "acyclic", "asp", "oracle"}));
  solve_cmd->add_flag("--parallel", solve_args.parallel, "Build reduction arcs on worker threads");
  solve_cmd->add_option("--cap", solve_args.cap, "Path cap for the oracle");

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Compute F(X) for a fixed first-stage path");
  eval_cmd->add_option("file", eval_args.file, "Instance file")->required();
  eval_cmd->add_option("--first-stage", eval_args.path, "Arc ids (0,2) or node labels (s>a>t)")
      ->required();
  eval_cmd->add_option("--cap", eval_args.cap, "Path cap for budgeted evaluation");

  std::string approx_file;
  std::size_t approx_cap = kDefaultPathCap;
  auto* approx_cmd = app.add_subcommand("approx", "Approximate a budgeted instance with certificates");
  approx_cmd->add_option("file", approx_file, "Instance file")->required();
  approx_cmd->add_option("--cap", approx_cap, "Path cap for the exact F evaluation");

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export-mip", "Write the MIP model as a CPLEX LP file");
  export_cmd->add_option("file", export_args.file, "Instance file")->required();
  export_cmd->add_option("--out", export_args.out_path, "LP file")->required();
  export_cmd->add_option("--model", export_args.model, "auto|interval|cont-budget")
      ->check(CLI::IsMember({"auto", "interval", "cont-budget"}));
  export_cmd->add_flag("--solve", export_args.solve, "Run the solver from RRSP_SOLVER_CMD");
  export_cmd->add_option("--time-limit", export_args.time_limit, "Solver time limit in seconds");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded random instance");
  gen_cmd->add_option("--family", gen_args.family, "layered|random-dag|asp")
      ->check(CLI::IsMember({"layered", "random-dag", "asp"}));
  gen_cmd->add_option("--gadget", gen_args.gadget, "recsp-incl|incsp-excl|recrob-discrete")
      ->check(CLI::IsMember({"recsp-incl", "incsp-excl", "recrob-discrete"}));
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("--layers", gen_args.layers, "Layer count including s and t");
  gen_cmd->add_option("--width", gen_args.width, "Nodes per inner layer");
  gen_cmd->add_option("--density", gen_args.density, "Arc density between layers");
  gen_cmd->add_option("--nodes", gen_args.nodes, "Node count (random-dag, gadgets)");
  gen_cmd->add_option("--probability", gen_args.probability, "Arc probability (random-dag, gadgets)");
  gen_cmd->add_option("--leaves", gen_args.leaves, "Arc count (asp)");
  gen_cmd->add_option("--series-bias", gen_args.series_bias, "Chance of a series split (asp)");
  gen_cmd->add_option("--pairs", gen_args.pairs, "Terminal pairs (gadgets)");
  gen_cmd->add_option("--c-range", gen_args.c_range, "First-stage cost range")->expected(2);
  gen_cmd->add_option("--nominal-range", gen_args.nominal_range, "Nominal cost range")->expected(2);
  gen_cmd->add_option("--deviation-range", gen_args.deviation_range, "Deviation range")->expected(2);
  gen_cmd->add_flag("--real", gen_args.real, "Draw real rather than whole costs");
  gen_cmd->add_option("--k-min", gen_args.k_min, "Smallest recovery parameter");
  gen_cmd->add_option("--k-max", gen_args.k_max, "Largest recovery parameter");
  gen_cmd->add_option("--neighborhood", gen_args.neighborhood, "incl|excl|sym")
      ->check(CLI::IsMember({"incl", "excl", "sym"}));
  gen_cmd->add_option("--budget-kind", gen_args.budget_kind, "interval|discrete|continuous")
      ->check(CLI::IsMember({"interval", "discrete", "continuous"}));
  gen_cmd->add_option("--budget", gen_args.budget, "Budget value");
  gen_cmd->add_flag("--relative-budget", gen_args.relative, "Scale the budget by m or D");
  gen_cmd->add_option("--out", gen_args.out_path, "Output file, - for stdout");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench_cmd->add_option("--suite", bench_args.suite, "Suite description (JSON)")->required();
  bench_cmd->add_option("--out", bench_args.out_path, "CSV output")->required();
  bench_cmd->add_option("--jobs", bench_args.jobs, "Worker threads");
  bench_cmd->add_flag("--parallel", bench_args.parallel, "Threaded reduction inside each solve");
  bench_cmd->add_flag("--strict", bench_args.strict, "Exit with 2 when any value disagrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*eval_cmd) return cmd_evaluate(eval_args, out, err);
    if (*approx_cmd) return cmd_approx(approx_file, approx_cap, out, err);
    if (*export_cmd) return cmd_export(export_args, out, err);
    if (*gen_cmd) return cmd_generate(gen_args, out, err);
    if (*bench_cmd) return cmd_bench(bench_args, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rrsp");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rrsp::cli
