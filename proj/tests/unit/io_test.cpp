#include <doctest.h>

#include "tfb/io.hpp"
#include "tfb/sampling.hpp"

using namespace tfb;
using tfb::io::json;

TEST_CASE("instance round trip") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_instance(seed);
    const json j = io::instance_to_json(inst);
    const Instance back = io::instance_from_json(j);
    CHECK(io::instance_to_json(back) == j);
    CHECK(back.mode == inst.mode);
    CHECK(back.graph.num_edges() == inst.graph.num_edges());
    for (std::size_t i = 0; i < inst.weights.size(); ++i)
      CHECK(back.weights[i] == inst.weights[i]);
  }
}

TEST_CASE("instance parsing accepts integer and fraction weights") {
  const json j = {
      {"vertices", {{{"id", 1}, {"b", 1}}, {{"id", 2}, {"b", 1}}}},
      {"edges", {{{"id", 1}, {"u", 1}, {"v", 2}, {"w", 3}}}},
      {"triangles", json::array()},
      {"mode", "factor"},
  };
  const Instance inst = io::instance_from_json(j);
  CHECK(inst.weight_of(1) == Rational(3));

  json frac = j;
  frac["edges"][0]["w"] = "-7/2";
  CHECK(io::instance_from_json(frac).weight_of(1) == Rational(-7, 2));

  json bad = j;
  bad["edges"][0]["w"] = 0.5;
  CHECK_THROWS_AS(io::instance_from_json(bad), Error);
  json missing = j;
  missing["edges"][0].erase("w");
  CHECK_THROWS_WITH_AS(io::instance_from_json(missing), doctest::Contains("missing field"),
                       Error);
}

TEST_CASE("point round trip") {
  const Instance inst = adversarial_instance();
  const ExtendedPoint p = adversarial_point(inst);
  const json j = io::point_to_json(p, inst);
  const ExtendedPoint back = io::point_from_json(j, inst);
  CHECK(io::point_to_json(back, inst) == j);
  for (std::size_t i = 0; i < p.x.size(); ++i) CHECK(back.x[i] == p.x[i]);
  for (int mask = 0; mask < kNumYSubsets; ++mask) CHECK(back.y[0][mask] == p.y[0][mask]);
}

TEST_CASE("point parsing errors") {
  const Instance inst = k3_instance(true);
  json j = io::point_to_json(ExtendedPoint{std::vector<Rational>(3, Rational(0)),
                                           {std::array<Rational, 7>{}}},
                             inst);
  SUBCASE("missing edge") {
    j["x"].erase("1");
    CHECK_THROWS_WITH_AS(io::point_from_json(j, inst), doctest::Contains("dimension mismatch"),
                         Error);
  }
  SUBCASE("unknown edge") {
    j["x"]["9"] = "1/2";
    CHECK_THROWS_WITH_AS(io::point_from_json(j, inst), doctest::Contains("unknown edge"), Error);
  }
  SUBCASE("missing y subset") {
    j["y"].erase(j["y"].size() - 1);
    CHECK_THROWS_WITH_AS(io::point_from_json(j, inst), doctest::Contains("dimension mismatch"),
                         Error);
  }
  SUBCASE("full-triangle subset") {
    j["y"][0]["j"] = {1, 2, 3};
    CHECK_THROWS_WITH_AS(io::point_from_json(j, inst), doctest::Contains("full triangle"),
                         Error);
  }
}

TEST_CASE("report and separation serialization") {
  const auto report = solve(prism_instance());
  const json j = io::report_to_json(report);
  CHECK(j["status"] == "optimal");
  CHECK(j["value"] == "8/1");
  CHECK(j["edges"].size() == 6);
  CHECK(j.contains("cuts"));
  CHECK(j.contains("iterations"));

  const auto inf = io::report_to_json(solve(k3_instance(true)));
  CHECK(inf["status"] == "infeasible");
  CHECK_FALSE(inf.contains("value"));

  const auto inst = adversarial_instance();
  const auto sep = separate(inst, adversarial_point(inst));
  const json js = io::separation_to_json(sep);
  CHECK(js["status"] == "violated");
  CHECK(js["family"] == "(8)");
  CHECK(Rational::parse(js["lhs"].get<std::string>()) < Rational(1));

  SeparationOutcome ok;
  ok.feasible = true;
  CHECK(io::separation_to_json(ok)["status"] == "feasible");
}
