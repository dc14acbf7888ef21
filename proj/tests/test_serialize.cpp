#include <cstdio>
#include <filesystem>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "smlearn/bench.hpp"
#include "smlearn/serialize.hpp"

using namespace smlearn;
using namespace fixtures;
using nlohmann::json;

TEST_CASE("reads the documented file format", "[serialize]") {
  auto j = json::parse(R"({"algebra": {"kind": "interval-nat"}, "states": 2, "initial": 1,
    "outputs": ["S", "B", "P"],
    "transitions": [{"from": 1, "guard": [[[0, 20]]], "to": 0, "out": "S"},
                    {"from": 1, "guard": [[[20, null]]], "to": 1, "out": "B"},
                    {"from": 0, "guard": [[[0, null]]], "to": 1, "out": "P"}]})");
  auto m = from_json(j);
  REQUIRE(validate(m).empty());
  CHECK(m.num_states() == 2);
  CHECK(m.outputs() == std::vector<std::string>{"S", "B", "P"});
  CHECK(m.run(word({0})) == "S");
  CHECK(m.run(word({0, 7})) == "P");
  CHECK(m.run(word({25, 25})) == "B");
}

TEST_CASE("round trip preserves structure", "[serialize]") {
  for (const auto& m : {worked_target(), make_mh(), make_atgs(), make_lower_bound(3, 4)}) {
    auto j = to_json(m);
    auto back = from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK_FALSE(symbolic_equiv(m, back));
    REQUIRE(back.num_transitions() == m.num_transitions());
    for (std::size_t i = 0; i < m.num_transitions(); ++i) CHECK(back.transitions()[i].guard == m.transitions()[i].guard);
  }
}

TEST_CASE("real coordinates use the next-above wrapper", "[serialize]") {
  auto alg = Algebra::interval_real(0.0);
  const Axis& ax = alg->axis(0);
  Coord k = real_key(next_above(0.4));
  auto j = coord_to_json(ax, k);
  CHECK(j == json{{"na", 0.4}});
  CHECK(coord_from_json(ax, j) == k);
  CHECK(coord_from_json(ax, json(0.5)) == real_key(0.5));
  CHECK_THROWS_AS(coord_from_json(ax, json("x")), FormatError);
}

TEST_CASE("parse_char accepts scalars, tuples and na", "[serialize]") {
  auto nat = Algebra::interval_nat();
  CHECK(parse_char(*nat, "3") == Char{3});
  CHECK(parse_char(*nat, "na(7)") == Char{8});
  auto prod = Algebra::product({Axis::nat(), Axis::real(0), Axis::real(-274), Axis::real(0)});
  CHECK(parse_char(*prod, "(1, 0, -15, na(0.4))") ==
        Char{1, real_key(0.0), real_key(-15.0), real_key(next_above(0.4))});
  CHECK_THROWS_AS(parse_char(*nat, "abc"), FormatError);
  CHECK_THROWS_AS(parse_char(*prod, "1,2"), std::exception);
}

TEST_CASE("malformed documents are rejected", "[serialize]") {
  CHECK_THROWS_AS(from_json(json::parse(R"({"states": 1})")), FormatError);
  CHECK_THROWS_AS(from_json(json::parse(R"({"algebra": {"kind": "weird"}, "states": 1, "initial": 0,
    "outputs": [], "transitions": []})")),
                  FormatError);
  CHECK_THROWS_AS(load_automaton("/nonexistent/file.json"), IoError);
}

TEST_CASE("files and DOT export", "[serialize]") {
  auto path = std::filesystem::temp_directory_path() / "smlearn_serialize_test.json";
  save_automaton(path.string(), worked_target());
  auto m = load_automaton(path.string());
  std::filesystem::remove(path);
  CHECK_FALSE(symbolic_equiv(m, worked_target()));

  auto dot = to_dot(worked_target());
  CHECK(dot.find("q0 [shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("q0 -> q1 [label=\"[0,20) | S\"]") != std::string::npos);
  CHECK(dot.find("q3 -> q0 [label=\"top | P\"]") != std::string::npos);
}
