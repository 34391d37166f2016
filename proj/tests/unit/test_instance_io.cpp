#include <doctest.h>

#include <filesystem>
#include <random>

#include <rrsp/error.hpp>
#include <rrsp/gen.hpp>
#include <rrsp/instance_io.hpp>

#include "../support/fixtures.hpp"

using namespace rrsp;

namespace {

void same(const Instance& a, const Instance& b) {
  CHECK(a.graph.node_count() == b.graph.node_count());
  CHECK(std::vector<Arc>(a.graph.arcs().begin(), a.graph.arcs().end()) ==
        std::vector<Arc>(b.graph.arcs().begin(), b.graph.arcs().end()));
  CHECK(a.graph.source() == b.graph.source());
  CHECK(a.graph.sink() == b.graph.sink());
  CHECK(a.first_stage == b.first_stage);
  CHECK(a.nominal == b.nominal);
  CHECK(a.deviation == b.deviation);
  CHECK(a.k == b.k);
  CHECK(a.neighborhood == b.neighborhood);
  CHECK(a.uncertainty == b.uncertainty);
  CHECK(a.label == b.label);
}

int parse_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& err) {
    return static_cast<int>(err.kind());
  }
  return -1;
}

}  // namespace

TEST_CASE("fixtures round-trip") {
  for (const auto& inst : {fixtures::d1(), fixtures::a1(3, NeighborhoodKind::Sym, ContinuousBudget{2.5}),
                           fixtures::d1(1, NeighborhoodKind::Excl, DiscreteBudget{2})}) {
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    same(inst, back);
    CHECK(serialize_instance(back) == text);
  }
  const auto text = serialize_instance(fixtures::d1());
  CHECK(text.find("\"format\": \"rrsp-instance\"") != std::string::npos);
  CHECK(text.find("\"c_hat\"") != std::string::npos);
}

TEST_CASE("property: generated instances round-trip losslessly") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams p;
    p.seed = seed;
    p.integral = seed % 2 == 0;
    p.family = RandomDagFamily{2 + static_cast<int>(seed % 9), 0.4};
    p.budget = {static_cast<BudgetKind>(seed % 3), 0.37, true};
    const auto inst = generate(p);
    const auto back = parse_instance(serialize_instance(inst));
    same(inst, back);
  }
}

TEST_CASE("unknown and missing fields are reported with a position") {
  auto text = serialize_instance(fixtures::d1());
  auto bad = text;
  bad.replace(bad.find("\"delta\": 0.0"), 12, "\"delta\": 0.0, \"colour\": 1");
  try {
    parse_instance(bad);
    FAIL("expected rejection");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Parse);
    CHECK(std::string(err.what()).find("/arcs/1/colour") != std::string::npos);
  }
  bad = text;
  bad.replace(bad.find("\"k\""), 3, "\"kk\"");
  CHECK(parse_kind(bad) == static_cast<int>(ErrorKind::Parse));
  CHECK(parse_kind("{") == static_cast<int>(ErrorKind::Parse));
  CHECK(parse_kind("[]") == static_cast<int>(ErrorKind::Parse));
  bad = text;
  bad.replace(bad.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK(parse_kind(bad) == static_cast<int>(ErrorKind::Parse));
  bad = text;
  bad.replace(bad.find("\"tail\": \"s\""), 11, "\"tail\": \"q\"");
  CHECK(parse_kind(bad) == static_cast<int>(ErrorKind::Parse));
  bad = text;
  bad.replace(bad.find("\"c_hat\": 3.0"), 12, "\"c_hat\": -3.0");
  CHECK(parse_kind(bad) == static_cast<int>(ErrorKind::Validation));
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "rrsp-io-test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "d1.json").string();
  save_instance(fixtures::d1(), path);
  same(load_instance(path), fixtures::d1());
  try {
    load_instance((dir / "missing.json").string());
    FAIL("expected Io");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Io);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("path specs") {
  const auto g = fixtures::d1().graph;
  CHECK(parse_path_spec(g, "0,2") == fixtures::kP1);
  CHECK(parse_path_spec(g, "[1, 3]") == fixtures::kP2);
  CHECK(parse_path_spec(g, "s>b>t") == fixtures::kP2);
  CHECK_THROWS_AS(parse_path_spec(g, "s>x>t"), Error);
  CHECK_THROWS_AS(parse_path_spec(g, "s>t"), Error);
  CHECK_THROWS_AS(parse_path_spec(g, "0,9"), Error);
  CHECK_THROWS_AS(parse_path_spec(g, "0;2"), Error);
}
