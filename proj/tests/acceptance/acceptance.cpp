#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <rrsp/approx.hpp>
#include <rrsp/csp.hpp>
#include <rrsp/error.hpp>
#include <rrsp/gen.hpp>
#include <rrsp/mip.hpp>
#include <rrsp/numeric.hpp>
#include <rrsp/oracle.hpp>
#include <rrsp/recsolve.hpp>
#include <rrsp/secondstage.hpp>

#include "../support/fixtures.hpp"
#include "../support/random.hpp"

using namespace rrsp;
using K = NeighborhoodKind;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kRelTol = 1e-6;
constexpr double kAbsSlack = 1e-6;
constexpr K kKinds[] = {K::Incl, K::Excl, K::Sym};

bool close(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kRelTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

std::string id_of(std::uint64_t seed, K kind, int k) {
  return "seed " + std::to_string(seed) + " " + std::string(to_string(kind)) + " k=" + std::to_string(k);
}

// n <= 12, m <= 20, first-stage costs sometimes negative
Instance small_dag(std::mt19937_64& rng, int round) {
  const int n = 2 + round % 11;
  const int m_lo = std::max(1, n - 1);
  const int m = std::uniform_int_distribution<int>(m_lo, 20)(rng);
  return randinst::dag(rng, {.n = n, .m = m, .cost_hi = 9, .negative_first_stage = round % 4 == 3});
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  std::mt19937_64 rng(1001);
  const auto start = Clock::now();
  int solves = 0;
  for (int round = 0; round < 500; ++round) {
    const auto base = small_dag(rng, round);
    for (K kind : kKinds)
      for (int k = 0; k <= 4; ++k) {
        const auto inst = with_neighborhood(base, kind, k);
        const double got = solve_acyclic(inst).value;
        const double want = oracle_recsp(inst).value;
        ++solves;
        if (!close(got, want))
          o.fail(id_of(round, kind, k) + ": acyclic " + std::to_string(got) + " vs oracle " +
                 std::to_string(want));
      }
  }
  const double secs = seconds_since(start);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  o.detail = std::to_string(solves) + " solves on 500 instances, " + std::to_string(secs) + " s";
  return o;
}

Outcome ac2() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int layered = 0, asp = 0, pairs = 0;
  auto compare = [&](const Instance& base, const char* which, auto&& solver, std::uint64_t round) {
    for (K kind : kKinds)
      for (int k = 0; k <= 4; ++k) {
        const auto inst = with_neighborhood(base, kind, k);
        const auto a = solver(inst);
        const auto b = solve_acyclic(inst);
        pairs += 2;
        if (!close(a.value, b.value))
          o.fail(std::string(which) + " " + id_of(round, kind, k) + ": " + std::to_string(a.value) +
                 " vs acyclic " + std::to_string(b.value));
        for (const auto* s : {&a, &b}) {
          const auto issues = check_solution(inst, *s);
          if (!issues.empty()) o.fail(std::string(which) + " " + id_of(round, kind, k) + ": " + issues.front());
        }
      }
  };
  for (int round = 0; round < 200; ++round) {
    Instance inst;
    if (round % 2 == 0) {
      inst = randinst::layered(rng, 3 + round % 4, 3);
    } else {
      GenParams p;
      p.family = LayeredFamily{3 + round % 4, 1 + round % 3, 0.5};
      p.seed = static_cast<std::uint64_t>(round);
      inst = generate(p);
    }
    if (!classify(inst.graph).layered) {
      o.fail("instance " + std::to_string(round) + " is not layered");
      continue;
    }
    ++layered;
    compare(inst, "layered", [](const Instance& i) { return solve_layered(i); }, round);
  }
  for (int round = 0; round < 200; ++round) {
    Instance inst;
    if (round % 2 == 0) {
      inst = randinst::asp(rng, 1 + round % 16);
    } else {
      GenParams p;
      p.family = AspFamily{1 + round % 24, 0.5};
      p.seed = static_cast<std::uint64_t>(round);
      inst = generate(p);
    }
    ++asp;
    compare(inst, "asp", [](const Instance& i) { return solve_asp(i); }, round);
  }
  o.detail = std::to_string(layered) + " layered + " + std::to_string(asp) + " ASP instances, " +
             std::to_string(pairs) + " solutions re-validated";
  return o;
}

Outcome ac3() {
  Outcome o;
  int checked = 0;
  auto expect = [&](const std::string& what, double got, double want) {
    ++checked;
    if (got != want) o.fail(what + ": got " + std::to_string(got) + ", expected " + std::to_string(want));
  };
  auto expect_path = [&](const std::string& what, const Path& got, const Path& want) {
    ++checked;
    if (got != want) o.fail(what + ": got " + format_path(got) + ", expected " + format_path(want));
  };
  using fixtures::kP1;
  using fixtures::kP2;
  const auto d1 = fixtures::d1();
  const auto& g = d1.graph;
  const auto upper = d1.upper_costs();

  // shortest paths, hop limits and CSP via the oracle
  CspInstance c{g, d1.first_stage, std::vector<int>(4, 0), 0};
  expect("D1 cost=C", oracle_csp(c).value, 0);
  expect_path("D1 cost=C path", oracle_csp(c).path, kP1);
  c.cost = upper;
  expect("D1 cost=c-bar", oracle_csp(c).value, 2);
  c.time = {0, 1, 0, 1};
  c.limit = 1;
  expect("D1 CSP T=1", oracle_csp(c).value, 10);
  expect_path("D1 CSP T=1 path", oracle_csp(c).path, kP1);
  c.limit = 2;
  expect("D1 CSP T=2", oracle_csp(c).value, 2);
  expect_path("D1 CSP T=2 path", oracle_csp(c).path, kP2);
  c.cost = d1.nominal;
  c.time = {1, 1, 1, 1};
  expect("D1 nominal hop<=2", oracle_csp(c).value, 2);

  // incremental problem and F under interval uncertainty
  const Scenario bar{upper};
  const auto inc2 = oracle_incremental(d1, kP1, bar);
  expect("D1 inc x=P1 k=2", inc2.value, 2);
  expect_path("D1 inc x=P1 k=2 path", inc2.path, kP2);
  const auto inc1 = oracle_incremental(fixtures::d1(1), kP1, bar);
  expect("D1 inc x=P1 k=1", inc1.value, 10);
  expect_path("D1 inc x=P1 k=1 path", inc1.path, kP1);
  auto full_f = [](const Instance& inst, const Path& x) {
    return evaluate_with_recoveries(inst, x, enumerate_neighborhood(inst, x)).value;
  };
  expect("D1 F(P1) Incl k=2", full_f(d1, kP1), 2);
  expect("D1 F(P2) Incl k=2", full_f(d1, kP2), 6);
  expect("D1 F(P2) k=0 cont 1", full_f(fixtures::d1(0, K::Incl, ContinuousBudget{1}), kP2), 6);
  expect("D1 F(P1) k=0 cont 1", full_f(fixtures::d1(0, K::Incl, ContinuousBudget{1}), kP1), 7);
  expect("D1 F(P1) k=2 cont 1", full_f(fixtures::d1(2, K::Incl, ContinuousBudget{1}), kP1), 2);
  expect("D1 F(P1) k=0 disc 1", full_f(fixtures::d1(0, K::Incl, DiscreteBudget{1}), kP1), 8);
  expect("D1 F(P2) k=0 disc 1", full_f(fixtures::d1(0, K::Incl, DiscreteBudget{1}), kP2), 6);

  // Rec SP optima
  auto rec = oracle_recsp(d1);
  expect("D1 Incl k=2", rec.value, 2);
  expect_path("D1 Incl k=2 X", rec.first_stage, kP1);
  expect_path("D1 Incl k=2 Y", rec.second_stage, kP2);
  rec = oracle_recsp(fixtures::d1(1));
  expect("D1 Incl k=1", rec.value, 6);
  expect_path("D1 Incl k=1 X", rec.first_stage, kP2);
  expect_path("D1 Incl k=1 Y", rec.second_stage, kP2);
  expect("D1 Sym k=3", oracle_recsp(fixtures::d1(3, K::Sym)).value, 6);
  expect("D1 Sym k=4", oracle_recsp(fixtures::d1(4, K::Sym)).value, 2);
  expect("D1 Excl k=2", oracle_recsp(fixtures::d1(2, K::Excl)).value, 2);
  expect("D1 Excl k=1", oracle_recsp(fixtures::d1(1, K::Excl)).value, 6);
  rec = oracle_recsp(fixtures::d1(0));
  expect("D1 min-max k=0", rec.value, 6);
  expect_path("D1 min-max k=0 X", rec.first_stage, kP2);
  expect("A1 interval", oracle_recsp(fixtures::a1()).value, 10);
  rec = oracle_recsp(fixtures::n1(1));
  expect("N1 Incl k=1", rec.value, 0);
  expect_path("N1 Incl k=1 X", rec.first_stage, Path{{0, 1}});
  expect_path("N1 Incl k=1 Y", rec.second_stage, Path{{2}});
  expect("N1 Incl k=0", oracle_recsp(fixtures::n1(0)).value, 9);
  expect("parallel pair Incl k=1", oracle_recsp(fixtures::parallel_pair()).value, 1);

  // budgeted optima
  for (K kind : kKinds)
    expect("A1 cont 1 " + std::string(to_string(kind)),
           oracle_recrob(fixtures::a1(0, kind, ContinuousBudget{1})).value, 6);
  auto rob = oracle_recrob(fixtures::d1(2, K::Incl, ContinuousBudget{1}));
  expect("D1 cont 1 Incl k=2", rob.value, 2);
  expect_path("D1 cont 1 Incl k=2 X", rob.first_stage, kP1);
  rob = oracle_recrob(fixtures::d1(0, K::Incl, DiscreteBudget{1}));
  expect("D1 disc 1 k=0", rob.value, 6);
  expect_path("D1 disc 1 k=0 X", rob.first_stage, kP2);

  // 5/3 bound traces
  const auto cont = fixtures::d1(2, K::Incl, ContinuousBudget{1});
  expect("D1 S' scenario", build_sprime(cont).cost == std::vector<double>{3.5, 1, 3.5, 1}, 1);
  auto ap = approx_solve(cont);
  expect_path("D1 cont approx X", ap.first_stage, kP1);
  expect_path("D1 cont approx Y", ap.recovery, kP2);
  expect("D1 cont approx F", ap.value, 2);
  ++checked;
  if (!close(ap.ratio, 5.0 / 3.0)) o.fail("D1 cont certified ratio " + std::to_string(ap.ratio));
  ap = approx_solve(fixtures::d1(0, K::Incl, DiscreteBudget{1}));
  ++checked;
  if (!close(ap.ratio, 5.0 / 3.0)) o.fail("D1 disc certified ratio " + std::to_string(ap.ratio));
  ++checked;
  if (ap.value > ap.ratio * 6 + kAbsSlack) o.fail("D1 disc approx exceeds 5/3 * 6");

  // the main solvers, once the oracle values above hold
  if (o.pass) {
    for (Method m : {Method::Auto, Method::Layered, Method::Acyclic, Method::Asp})
      expect("D1 Incl k=2 " + std::string(to_string(m)), solve(d1, {.method = m}).value, 2);
    expect("D1 Sym k=4 layered", solve_layered(fixtures::d1(4, K::Sym)).value, 2);
    expect("D1 Excl k=2 layered", solve_layered(fixtures::d1(2, K::Excl)).value, 2);
    expect("D1 min-max", solve_minmax_k0(fixtures::d1(0)).value, 6);
    expect("N1 Incl k=1 acyclic", solve_acyclic(fixtures::n1(1)).value, 0);
    expect("N1 Incl k=0 acyclic", solve_acyclic(fixtures::n1(0)).value, 9);
    expect("parallel pair asp", solve_asp(fixtures::parallel_pair()).value, 1);
    expect("D1 F(P1) cont k=0 dp", evaluate_objective(fixtures::d1(0, K::Incl, ContinuousBudget{1}), kP1).value, 7);
    expect("D1 F(P1) disc k=0 dp", evaluate_objective(fixtures::d1(0, K::Incl, DiscreteBudget{1}), kP1).value, 8);
  }
  o.detail = std::to_string(checked) + " fixture values";
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(4004);
  int sweeps = 0;
  for (int round = 0; round < 500; ++round) {
    const auto base = small_dag(rng, round);
    CspInstance c{base.graph, base.first_stage, {}, 0};
    for (int e = 0; e < base.arc_count(); ++e) c.time.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
    int total = 0;
    for (int t : c.time) total += t;
    double prev = kInf;
    for (int limit = 0; limit <= total; ++limit) {
      c.limit = limit;
      const auto got = try_solve_csp(c);
      std::optional<double> want;
      try {
        want = oracle_csp(c).value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Infeasible) throw;
      }
      ++sweeps;
      const double value = got ? got->value : kInf;
      if (got.has_value() != want.has_value() || (got && !close(got->value, *want)))
        o.fail("instance " + std::to_string(round) + " T=" + std::to_string(limit) + ": solver " +
               std::to_string(value) + " vs oracle " + (want ? std::to_string(*want) : "infeasible"));
      if (value > prev + kAbsSlack)
        o.fail("instance " + std::to_string(round) + " value rises at T=" + std::to_string(limit));
      prev = value;
    }
  }
  o.detail = "500 instances, " + std::to_string(sweeps) + " (instance, T) points";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(5005);
  int compared = 0;
  for (int round = 0; round < 200; ++round) {
    Instance base;
    if (round % 2 == 0) {
      base = randinst::layered(rng, 3 + round % 5, 3);
    } else {
      GenParams p;
      p.family = LayeredFamily{3 + round % 5, 1 + round % 4, 0.6};
      p.seed = 500 + static_cast<std::uint64_t>(round);
      base = generate(p);
    }
    for (int k = 0; k <= 8; ++k) {
      const double incl = solve_acyclic(with_neighborhood(base, K::Incl, k)).value;
      const double excl = solve_acyclic(with_neighborhood(base, K::Excl, k)).value;
      const double sym = solve_acyclic(with_neighborhood(base, K::Sym, k)).value;
      const double half = solve_acyclic(with_neighborhood(base, K::Incl, k / 2)).value;
      compared += 2;
      if (excl != incl) o.fail("instance " + std::to_string(round) + " k=" + std::to_string(k) + ": Excl != Incl");
      if (sym != half) o.fail("instance " + std::to_string(round) + " k=" + std::to_string(k) + ": Sym != Incl(k/2)");
      if (base.arc_count() <= 20 && k <= 4) {
        const double oracle_excl = oracle_recsp(with_neighborhood(base, K::Excl, k)).value;
        if (oracle_excl != incl) o.fail("instance " + std::to_string(round) + ": oracle Excl disagrees");
      }
    }
  }
  o.detail = "200 layered instances, k=0..8, " + std::to_string(compared) + " identities";
  return o;
}

Outcome ac6() {
  Outcome o;
  GenParams p;
  p.family = AspFamily{100000, 0.5};
  p.k_min = p.k_max = 50;
  p.seed = 6006;
  const auto big = generate(p);
  const auto start = Clock::now();
  const auto sol = solve_asp(big);
  const double secs = seconds_since(start);
  if (secs >= 10) o.fail("m=100000 took " + std::to_string(secs) + " s");
  if (!check_solution(big, sol).empty()) o.fail("m=100000 solution does not validate");

  p.family = AspFamily{2000, 0.5};
  const auto small = generate(p);
  const double a = solve_asp(small).value;
  const double b = solve_acyclic(small).value;
  if (!close(a, b)) o.fail("m=2000 sibling: asp " + std::to_string(a) + " vs acyclic " + std::to_string(b));
  std::ostringstream d;
  d << "m=" << big.arc_count() << " k=50 in " << secs << " s (value " << sol.value << "); sibling m="
    << small.arc_count() << " asp=" << a << " acyclic=" << b;
  o.detail = d.str();
  return o;
}

Outcome ac7() {
  Outcome o;
  int tested = 0, yes = 0, skipped = 0, mismatches = 0;
  for (std::uint64_t seed = 1; tested < 120 && seed < 2000; ++seed) {
    const int pairs = 1 + static_cast<int>(seed % 3);
    const int nodes = std::min(12, 2 * pairs + 2 + static_cast<int>(seed % 5));
    const double prob = 0.15 + 0.05 * static_cast<double>(seed % 4);
    const auto kv = random_kvdp(nodes, pairs, prob, seed);
    const bool disjoint = disjoint_paths_exist(kv);
    double rec, inc, rob;
    try {
      rec = oracle_recsp(gadget_recsp_incl(kv)).value;
      const auto g = gadget_incsp_excl(kv);
      inc = oracle_incremental(g.instance, g.first_stage, upper_bound_scenario(g.instance)).value;
      rob = oracle_recrob(gadget_recrob_discrete(kv)).value;
    } catch (const TooManyPaths&) {
      ++skipped;
      continue;
    }
    ++tested;
    yes += disjoint;
    const char* names[] = {"recsp-incl", "incsp-excl", "recrob-discrete"};
    const double values[] = {rec, inc, rob};
    for (int i = 0; i < 3; ++i)
      if (disjoint != (values[i] == 0)) {
        ++mismatches;
        o.fail("seed " + std::to_string(seed) + " K=" + std::to_string(pairs) + " " + names[i] +
               ": disjoint=" + (disjoint ? "yes" : "no") + " optimum=" + std::to_string(values[i]));
      }
  }
  if (tested < 100) o.fail("only " + std::to_string(tested) + " instances within the path cap");
  o.detail = std::to_string(tested) + " K-V-DP instances (" + std::to_string(yes) + " positive, " +
             std::to_string(skipped) + " over the path cap), " + std::to_string(mismatches) +
             " gadget mismatches";
  return o;
}

Outcome ac8() {
  Outcome o;
  std::mt19937_64 rng(8008);
  int evaluations = 0;
  for (int round = 0; round < 200; ++round) {
    auto base = randinst::dag(rng, {.n = 2 + round % 8, .m = 2 + round % 10});
    base.neighborhood = kKinds[round % 3];
    base.k = round % 3;
    const auto paths = enumerate_st_paths(base.graph, kDefaultPathCap);
    const Path x = paths[std::uniform_int_distribution<std::size_t>(0, paths.size() - 1)(rng)];
    const double cx = path_cost(x, base.first_stage);
    const double nominal = cx + solve_incremental(base, x, nominal_scenario(base)).value;
    const double interval = adversarial_interval(base, x).value;
    const double d = base.total_deviation();
    const std::string tag = "instance " + std::to_string(round);

    double prev = -kInf;
    for (int step = 0; step <= 8; ++step) {
      const double gamma = d * step / 6.0;  // runs past D
      const double f = evaluate_objective(with_uncertainty(base, ContinuousBudget{gamma}), x).value;
      ++evaluations;
      if (f < prev - kAbsSlack) o.fail(tag + ": F decreases at budget " + std::to_string(gamma));
      if (step == 0 && !close(f, nominal)) o.fail(tag + ": F at budget 0 differs from nominal");
      if (step >= 6 && !close(f, interval)) o.fail(tag + ": F at budget >= D differs from interval");
      prev = f;
    }
    prev = -kInf;
    for (int g = 0; g <= base.arc_count(); ++g) {
      const double f = evaluate_objective(with_uncertainty(base, DiscreteBudget{g}), x).value;
      ++evaluations;
      if (f < prev - kAbsSlack) o.fail(tag + ": discrete F decreases at " + std::to_string(g));
      if (g == 0 && !close(f, nominal)) o.fail(tag + ": discrete F at 0 differs from nominal");
      if (g == base.arc_count() && !close(f, interval)) o.fail(tag + ": discrete F at m differs from interval");
      prev = f;
    }
  }
  o.detail = "200 instances, " + std::to_string(evaluations) + " evaluations";
  return o;
}

Outcome ac9() {
  Outcome o;
  std::mt19937_64 rng(9009);
  int disc = 0, cont = 0;
  double worst = 0;
  for (int round = 0; round < 500; ++round) {
    auto base = randinst::dag(rng, {.n = 2 + round % 8, .m = 2 + round % 11});
    for (auto& c : base.nominal) c += 1;
    base.neighborhood = kKinds[round % 3];
    base.k = round % 4;
    const double d = base.total_deviation();
    const auto bounded = [&](const Instance& inst, const char* what) {
      const auto r = approx_solve(inst);
      const double opt = oracle_recrob(inst).value;
      if (r.value > r.ratio * opt + kAbsSlack)
        o.fail("instance " + std::to_string(round) + " " + what + ": F=" + std::to_string(r.value) +
               " > " + std::to_string(r.ratio) + " * " + std::to_string(opt));
      if (opt > 0) worst = std::max(worst, r.value / opt);
    };
    const int gd = std::uniform_int_distribution<int>(0, base.arc_count())(rng);
    bounded(with_uncertainty(base, DiscreteBudget{gd}), "discrete");
    ++disc;
    const double gc = std::uniform_real_distribution<double>(0, d)(rng);
    bounded(with_uncertainty(base, ContinuousBudget{gc}), "continuous");
    ++cont;
  }
  std::ostringstream det;
  det << disc << " discrete + " << cont << " continuous instances, worst observed ratio " << worst;
  o.detail = det.str();
  return o;
}

Outcome ac10() {
  Outcome o;
  const char* env = std::getenv("RRSP_SOLVER_CMD");
  const bool configured = env && *env;
  std::mt19937_64 rng(1010);

  // size assertions
  std::vector<std::pair<int, std::size_t>> interval_sizes, budget_sizes;
  for (int m : {4, 8, 16, 32}) {
    auto inst = randinst::dag(rng, {.n = 2 + m / 3, .m = m});
    inst.k = 2;
    const auto a = build_interval_mip(inst);
    const auto b = build_continuous_budget_mip(with_uncertainty(inst, ContinuousBudget{2}));
    interval_sizes.emplace_back(m, a.variables.size());
    budget_sizes.emplace_back(m, b.variables.size());
    if (a.variables.size() != 3 * static_cast<std::size_t>(m)) o.fail("interval model has " + std::to_string(a.variables.size()) + " variables for m=" + std::to_string(m));
    if (export_lp(a) != export_lp(build_interval_mip(inst))) o.fail("interval LP bytes differ between runs");
    if (export_lp(b) != export_lp(build_continuous_budget_mip(with_uncertainty(inst, ContinuousBudget{2}))))
      o.fail("budget LP bytes differ between runs");
  }
  const double r1 = static_cast<double>(budget_sizes[3].second) / static_cast<double>(budget_sizes[2].second);
  if (r1 < 3.0 || r1 > 5.0) o.fail("budget model growth ratio " + std::to_string(r1) + " is not quadratic");
  if (build_interval_mip(fixtures::a1()).variables.size() != 3) o.fail("A1 interval model is not 3 variables");
  if (build_interval_mip(fixtures::d1()).variables.size() != 12) o.fail("D1 interval model is not 12 variables");

  std::ostringstream d;
  d << "variables m=4..32: interval";
  for (auto [m, v] : interval_sizes) d << ' ' << v;
  d << ", budget";
  for (auto [m, v] : budget_sizes) d << ' ' << v;

  if (!configured) {
    d << "; RRSP_SOLVER_CMD not set, external cross-check skipped";
    o.detail = d.str();
    return o;
  }
  int solved = 0;
  SolverConfig config;
  config.time_limit = std::chrono::seconds(30);
  for (int round = 0; round < 60; ++round) {
    auto base = randinst::dag(rng, {.n = 2 + round % 6, .m = 2 + round % 8});
    base.neighborhood = kKinds[round % 3];
    base.k = round % 3;
    try {
      const auto im = build_interval_mip(base);
      const double want_i = oracle_recsp(base).value;
      const double got_i = decode_solution(base, im, run_external_solver(im, config)).value;
      if (!close(got_i, want_i))
        o.fail("interval instance " + std::to_string(round) + ": " + std::to_string(got_i) + " vs " + std::to_string(want_i));

      const auto cb = with_uncertainty(base, ContinuousBudget{base.total_deviation() * (round % 4) / 3.0});
      const auto bm = build_continuous_budget_mip(cb);
      const double want_b = oracle_recrob(cb).value;
      const double got_b = decode_solution(cb, bm, run_external_solver(bm, config)).value;
      if (!close(got_b, want_b))
        o.fail("budget instance " + std::to_string(round) + ": " + std::to_string(got_b) + " vs " + std::to_string(want_b));
      ++solved;
    } catch (const Error& e) {
      o.fail("instance " + std::to_string(round) + ": " + e.what());
    }
  }
  d << "; external solver matched the oracle on " << solved << " instances (both models)";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 oracle equivalence, interval", ac1},
      {"AC2 cross-solver agreement", ac2},
      {"AC3 fixture ledger", ac3},
      {"AC4 CSP correctness", ac4},
      {"AC5 layered identities", ac5},
      {"AC6 ASP complexity smoke", ac6},
      {"AC7 gadget round-trips", ac7},
      {"AC8 budgeted monotonicity", ac8},
      {"AC9 approximation soundness", ac9},
      {"AC10 MIP cross-check", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    if (!o.pass) std::printf(" (first failure: %s)", o.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
