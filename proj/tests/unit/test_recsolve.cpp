#include <doctest.h>

#include <random>

#include <rrsp/error.hpp>
#include <rrsp/numeric.hpp>
#include <rrsp/oracle.hpp>
#include <rrsp/recsolve.hpp>

#include "../support/brute.hpp"
#include "../support/fixtures.hpp"
#include "../support/random.hpp"

using namespace rrsp;
using fixtures::kP1;
using fixtures::kP2;
using K = NeighborhoodKind;

namespace {

const K kKinds[] = {K::Incl, K::Excl, K::Sym};

void check_pair(const Instance& inst, const Solution& s) {
  CHECK(check_solution(inst, s).empty());
  CHECK(approx_equal(interval_pair_value(inst, s.first_stage, s.second_stage), s.value));
}

}  // namespace

TEST_CASE("oracle reproduces the fixture ledger") {
  auto s = oracle_recsp(fixtures::d1(2));
  CHECK(s.value == 2);
  CHECK(s.first_stage == kP1);
  CHECK(s.second_stage == kP2);
  CHECK(s.solver == "oracle");
  s = oracle_recsp(fixtures::d1(1));
  CHECK(s.value == 6);
  CHECK(s.first_stage == kP2);
  CHECK(s.second_stage == kP2);
  CHECK(oracle_recsp(fixtures::d1(3, K::Sym)).value == 6);
  CHECK(oracle_recsp(fixtures::d1(4, K::Sym)).value == 2);
  CHECK(oracle_recsp(fixtures::d1(1, K::Excl)).value == 6);
  CHECK(oracle_recsp(fixtures::d1(2, K::Excl)).value == 2);
  CHECK(oracle_recsp(fixtures::d1(0)).value == 6);
  for (int k = 0; k < 3; ++k)
    for (auto kind : kKinds) CHECK(oracle_recsp(fixtures::a1(k, kind)).value == 10);
  CHECK(oracle_recsp(fixtures::n1(1)).value == 0);
  CHECK(oracle_recsp(fixtures::n1(0)).value == 9);
  CHECK(oracle_recsp(fixtures::parallel_pair(1)).value == 1);
  CHECK(oracle_recsp(fixtures::series_chain(1)).value == 10);
  // the hand-rolled enumerator agrees
  CHECK(brute::recsp(fixtures::d1(2)) == 2);
  CHECK(brute::recsp(fixtures::d1(1)) == 6);
  CHECK(brute::recsp(fixtures::n1(1)) == 0);
}

TEST_CASE("oracle caps") {
  CHECK_THROWS_AS(oracle_recsp(fixtures::d1(2), 1), TooManyPaths);
}

TEST_CASE("budgeted oracle") {
  auto s = oracle_recrob(fixtures::d1(2, K::Incl, ContinuousBudget{1}));
  CHECK(s.first_stage == kP1);
  CHECK(s.value == doctest::Approx(2));
  s = oracle_recrob(fixtures::d1(0, K::Incl, DiscreteBudget{1}));
  CHECK(s.first_stage == kP2);
  CHECK(s.value == 6);
  CHECK(s.witness.has_value());
  auto zero = fixtures::d1(2, K::Incl, ContinuousBudget{0});
  auto flat = fixtures::d1(2);
  flat.deviation.assign(4, 0.0);
  CHECK(oracle_recrob(zero).value == doctest::Approx(oracle_recsp(flat).value));
  CHECK(oracle_recrob(fixtures::d1(2)).value == 2);
}

TEST_CASE("min-max solver for k = 0") {
  auto s = solve_minmax_k0(fixtures::d1(0));
  CHECK(s.first_stage == kP2);
  CHECK(s.second_stage == kP2);
  CHECK(s.value == 6);
  CHECK(s.solver == "minmax");
  CHECK(solve_minmax_k0(fixtures::a1()).value == 10);
  auto plain = fixtures::d1(0);
  plain.nominal.assign(4, 0.0);
  plain.deviation.assign(4, 0.0);
  s = solve_minmax_k0(plain);
  CHECK(s.first_stage == kP1);
  CHECK(s.value == 0);
}

TEST_CASE("fixtures through every exact solver") {
  for (auto kind : kKinds)
    for (int k = 0; k <= 4; ++k) {
      const auto inst = fixtures::d1(k, kind);
      const double expected = oracle_recsp(inst).value;
      for (const auto& s : {solve_layered(inst), solve_acyclic(inst), solve_acyclic(inst, true),
                            solve_asp(inst), solve(inst)}) {
        CHECK(s.value == expected);
        check_pair(inst, s);
      }
    }
  auto s = solve(fixtures::d1(2));
  CHECK(s.value == 2);
  CHECK(s.solver == "asp");
  CHECK(s.first_stage == kP1);
  CHECK(s.second_stage == kP2);
  CHECK(solve(fixtures::d1(1)).value == 6);
  CHECK(solve(fixtures::d1(3, K::Sym)).value == 6);
  CHECK(solve(fixtures::d1(4, K::Sym)).value == 2);
  CHECK(solve(fixtures::d1(0)).solver == "minmax");
  CHECK(solve_layered(fixtures::d1(2, K::Excl)).value == 2);
  CHECK(solve_layered(fixtures::d1(4, K::Sym)).value == solve_layered(fixtures::d1(2)).value);

  for (auto kind : kKinds) {
    CHECK(solve_acyclic(fixtures::n1(1, kind)).value == oracle_recsp(fixtures::n1(1, kind)).value);
    CHECK(solve_asp(fixtures::parallel_pair(1, kind)).value ==
          oracle_recsp(fixtures::parallel_pair(1, kind)).value);
    CHECK(solve_asp(fixtures::series_chain(2, kind)).value == 10);
  }
  s = solve_acyclic(fixtures::n1(1));
  CHECK(s.value == 0);
  CHECK(s.first_stage == Path{{0, 1}});
  CHECK(s.second_stage == Path{{2}});
  CHECK(solve_acyclic(fixtures::n1(0)).value == 9);
  CHECK(solve_asp(fixtures::parallel_pair(1)).value == 1);
}

TEST_CASE("dispatcher errors") {
  CHECK_THROWS_AS(solve(fixtures::d1(2, K::Incl, DiscreteBudget{1})), Error);
  Instance cyc = fixtures::n1();
  cyc.graph = Multidigraph(3, {{0, 1}, {1, 0}, {1, 2}}, 0, 2);
  try {
    solve(cyc);
    FAIL("expected rejection");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::UnsupportedStructure);
  }
  CHECK(solve(cyc, {.method = Method::Oracle}).value == oracle_recsp(cyc).value);
  CHECK_THROWS_AS(solve(fixtures::n1(1), {.method = Method::Layered}), Error);
  Instance bridge = fixtures::d1(1);
  bridge.graph = Multidigraph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}, 0, 3);
  bridge.first_stage.push_back(1);
  bridge.nominal.push_back(1);
  bridge.deviation.push_back(0);
  CHECK_THROWS_AS(solve(bridge, {.method = Method::Asp}), Error);
  CHECK(solve(bridge).solver == "acyclic");
  CHECK_THROWS_AS(solve(fixtures::d1(1), {.method = Method::MinMax}), Error);
  CHECK(parse_method("asp") == Method::Asp);
  CHECK_FALSE(parse_method("fast").has_value());
}

TEST_CASE("reduction graphs carry consistent provenance") {
  const auto inst = fixtures::d1(2);
  const auto red = build_layered_reduction(inst);
  CHECK(red.limit == 2);
  for (ArcId e = 0; e < red.graph.arc_count(); ++e) {
    const auto& p = red.provenance[static_cast<std::size_t>(e)];
    if (p.kind == Provenance::Kind::BothStages) {
      CHECK(red.time[static_cast<std::size_t>(e)] == 0);
      const auto i = static_cast<std::size_t>(p.arc);
      CHECK(red.cost[static_cast<std::size_t>(e)] == inst.first_stage[i] + inst.nominal[i] + inst.deviation[i]);
    } else {
      CHECK(red.time[static_cast<std::size_t>(e)] >= 0);
      CHECK(red.time[static_cast<std::size_t>(e)] <= red.limit);
    }
  }
  for (auto kind : kKinds) {
    const auto acyc = build_acyclic_reduction(fixtures::d1(2, kind));
    CHECK(acyc.graph.node_count() == 4);
    CHECK(acyc.provenance.size() == static_cast<std::size_t>(acyc.graph.arc_count()));
    CHECK(is_acyclic(acyc.graph));
  }
}

TEST_CASE("property: acyclic solver equals oracle") {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int round = 0; round < 120; ++round) {
    auto inst = randinst::dag(rng, {.n = 2 + round % 11, .m = 2 + round % 19,
                                    .negative_first_stage = round % 3 == 0});
    for (auto kind : kKinds)
      for (int k = 0; k <= 4; ++k) {
        inst.neighborhood = kind;
        inst.k = k;
        const auto expected = brute::recsp(inst);
        const auto s = solve_acyclic(inst, round % 2 == 1);
        CHECK(approx_equal(s.value, expected));
        check_pair(inst, s);
        CHECK(approx_equal(oracle_recsp(inst).value, expected));
        CHECK(approx_equal(solve(inst).value, expected));
        ++checked;
      }
  }
  CHECK(checked == 1800);
}

TEST_CASE("property: layered and ASP solvers agree with the acyclic solver") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 100; ++round) {
    auto lay = randinst::layered(rng, 2 + round % 6, 3);
    auto sp = randinst::asp(rng, 1 + round % 25);
    for (auto kind : kKinds)
      for (int k = 0; k <= 4; ++k) {
        lay.neighborhood = sp.neighborhood = kind;
        lay.k = sp.k = k;
        const auto a = solve_acyclic(lay);
        const auto l = solve_layered(lay);
        CHECK(approx_equal(a.value, l.value));
        check_pair(lay, l);
        const auto b = solve_acyclic(sp);
        const auto t = solve_asp(sp);
        CHECK(approx_equal(b.value, t.value));
        check_pair(sp, t);
        if (k % 2 == 0 && kind == K::Incl) {
          CHECK(approx_equal(oracle_recsp(sp).value, t.value));
        }
      }
    // layered identities
    for (int k = 0; k <= 4; ++k) {
      const double incl = solve_layered(with_neighborhood(lay, K::Incl, k)).value;
      CHECK(solve_acyclic(with_neighborhood(lay, K::Excl, k)).value == incl);
      CHECK(solve_acyclic(with_neighborhood(lay, K::Sym, 2 * k)).value == incl);
      CHECK(solve_acyclic(with_neighborhood(lay, K::Sym, 2 * k + 1)).value == incl);
    }
  }
}

TEST_CASE("determinism across repeated and threaded runs") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 40; ++round) {
    auto inst = randinst::dag(rng, {.n = 8, .m = 16});
    inst.k = 2;
    inst.neighborhood = kKinds[round % 3];
    const auto a = solve_acyclic(inst);
    const auto b = solve_acyclic(inst, true);
    CHECK(a.first_stage == b.first_stage);
    CHECK(a.second_stage == b.second_stage);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("large k behaves like an unconstrained neighborhood") {
  const auto inst = fixtures::d1(100, K::Sym);
  CHECK(solve(inst).value == 2);
  CHECK(solve_acyclic(inst).value == 2);
  CHECK(solve_layered(inst).value == 2);
  CHECK(solve_asp(inst).value == 2);
}
