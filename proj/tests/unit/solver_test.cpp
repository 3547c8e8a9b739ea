#include <doctest.h>

#include <sstream>

#include "tfb/sampling.hpp"
#include "tfb/solver.hpp"

using namespace tfb;

namespace {

Rational set_weight(const Instance& inst, const EdgeSet& m) {
  Rational w(0);
  for (EdgeId e : m) w += inst.weight_of(e);
  return w;
}

std::string report_fingerprint(const SolveReport& r) {
  std::ostringstream os;
  os << (r.status == SolveStatus::optimal ? "opt " : "inf ");
  if (r.status == SolveStatus::optimal) {
    os << r.optimum.fraction_str();
    for (EdgeId e : r.factor) os << "," << e;
  }
  os << "|" << r.cuts.size() << "|" << r.iterations;
  return os.str();
}

}  // namespace

TEST_CASE("relaxation: triangle-free K3 needs no cuts") {
  const auto r = solve_relaxation(k3_instance(false));
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.value == Rational(3));
  CHECK(r.cuts.empty());
  CHECK(r.iterations == 1);
}

TEST_CASE("relaxation: forbidden K3 is infeasible with a verified certificate") {
  const auto r = solve_relaxation(k3_instance(true));
  REQUIRE(r.status == SolveStatus::infeasible);
  CHECK_FALSE(r.farkas.empty());
  CHECK(lp::farkas_proves_infeasible(r.final_model, r.farkas));
}

TEST_CASE("relaxation: prism reaches the brute-force optimum") {
  const auto inst = prism_instance();
  const auto r = solve_relaxation(inst);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.value == Rational(8));
  const auto oracle = brute_force_optimum(inst);
  CHECK(r.value == oracle.weight);
}

TEST_CASE("relaxation: cuts strictly reduce a fractional optimum to zero") {
  // Weight only the forbidden triangle: the base system reaches 2 at
  // x = 2/3 on the triangle, while every factor avoiding the triangle
  // fully is worth 0. The corner cuts must drive the value down.
  Instance inst = adversarial_instance();
  for (std::size_t i = 0; i < inst.weights.size(); ++i)
    inst.weights[i] = i < 3 ? Rational(1) : Rational(0);
  const auto oracle = brute_force_optimum(inst);
  REQUIRE(oracle.status == OracleStatus::optimal);
  REQUIRE(oracle.weight == Rational(0));

  const auto r = solve_relaxation(inst);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.value == Rational(0));
  REQUIRE(r.value_trace.size() >= 2);
  CHECK(r.value_trace.front() == Rational(2));
  CHECK(r.value_trace.front() > r.value_trace.back());
  CHECK_FALSE(r.cuts.empty());

  // The same effect at the LP level: two corner-cut rows pin the whole
  // y mass on the empty subset and the triangle value collapses.
  BaseModel base = build_base_model(inst);
  const auto before = lp::solve(base.model);
  REQUIRE(before.status == lp::Status::optimal);
  CHECK(before.value == Rational(2));
  const auto after = lp::add_rows_and_resolve(
      base.model, {make_cut_row(inst, base, CutTriple{{2, 5}, {1}, {2}}),
                   make_cut_row(inst, base, CutTriple{{1, 4}, {1}, {3}})});
  REQUIRE(after.status == lp::Status::optimal);
  CHECK(after.value < before.value);
  CHECK(after.value == Rational(0));
}

TEST_CASE("relaxation: LP value never increases across cut additions") {
  for (std::uint64_t seed : {2ull, 5ull, 9ull, 14ull, 23ull}) {
    const Instance inst = random_instance(seed);
    const auto r = solve_relaxation(inst);
    for (std::size_t i = 1; i < r.value_trace.size(); ++i)
      CHECK(r.value_trace[i] <= r.value_trace[i - 1]);
  }
}

TEST_CASE("relaxation: every cut is violated when added and valid for all factors") {
  int instances_with_cuts = 0;
  for (std::uint64_t seed = 1; seed <= 40 && instances_with_cuts < 5; ++seed) {
    RandomInstanceParams params;
    params.max_vertices = 5;
    params.max_edges = 9;
    const Instance inst = random_instance(seed, params);
    const auto r = solve_relaxation(inst);
    if (r.cuts.empty()) continue;
    ++instances_with_cuts;
    const auto factors = enumerate_tfree_bfactors(inst);
    for (const auto& cut : r.cuts) {
      CHECK(cut_in_family(inst, cut));
      for (const auto& m : factors) {
        const auto p = canonical_y(inst, m);
        CHECK(eval_cut_lhs(inst, p, cut, CutVariant::strong) >= Rational(1));
      }
    }
  }
  CHECK(instances_with_cuts >= 3);
}

TEST_CASE("extraction: K4 recovers a weight-4 four-cycle") {
  const auto inst = k4_instance();
  const auto relax = solve_relaxation(inst);
  REQUIRE(relax.status == SolveStatus::optimal);
  REQUIRE(relax.value == Rational(4));
  const EdgeSet m = extract_integral(inst, relax.value);
  CHECK(m.size() == 4);
  CHECK(is_tfree_bfactor(inst, m));
  CHECK(set_weight(inst, m) == Rational(4));
}

TEST_CASE("extraction: unique optimum matches the brute-force witness") {
  // Distinct powers of two make every subset weight unique.
  Instance inst = prism_instance();
  for (std::size_t i = 0; i < inst.weights.size(); ++i) inst.weights[i] = Rational(1L << i);
  const auto oracle = brute_force_optimum(inst);
  REQUIRE(oracle.status == OracleStatus::optimal);
  const auto report = solve(inst);
  REQUIRE(report.status == SolveStatus::optimal);
  CHECK(report.optimum == oracle.weight);
  CHECK(report.factor == oracle.witness);
}

TEST_CASE("extraction: zero weights still produce a valid factor") {
  Instance inst = prism_instance();
  for (auto& w : inst.weights) w = Rational(0);
  const auto report = solve(inst);
  REQUIRE(report.status == SolveStatus::optimal);
  CHECK(report.optimum == Rational(0));
  CHECK(is_tfree_bfactor(inst, report.factor));
}

TEST_CASE("extraction: the fixing loop agrees with the shortcut") {
  SolveOptions fixing;
  fixing.force_fixing_extraction = true;
  SUBCASE("fixtures") {
    for (const Instance& inst : {prism_instance(), k4_instance(), adversarial_instance()}) {
      const auto fast = solve(inst);
      const auto slow = solve(inst, fixing);
      REQUIRE(fast.status == SolveStatus::optimal);
      REQUIRE(slow.status == SolveStatus::optimal);
      CHECK(fast.optimum == slow.optimum);
      CHECK(is_tfree_bfactor(inst, slow.factor));
    }
  }
  SUBCASE("fixing on a unique optimum returns the brute-force witness") {
    Instance inst = prism_instance();
    for (std::size_t i = 0; i < inst.weights.size(); ++i) inst.weights[i] = Rational(1L << i);
    const auto oracle = brute_force_optimum(inst);
    const auto report = solve(inst, fixing);
    REQUIRE(report.status == SolveStatus::optimal);
    CHECK(report.factor == oracle.witness);
  }
  SUBCASE("random corpus under forced fixing") {
    for (std::uint64_t seed = 40; seed <= 60; ++seed) {
      RandomInstanceParams params;
      params.max_vertices = 5;
      params.max_edges = 8;
      const Instance inst = random_instance(seed, params);
      const auto oracle = brute_force_optimum(inst);
      if (oracle.status != OracleStatus::optimal) continue;
      const auto report = solve(inst, fixing);
      REQUIRE(report.status == SolveStatus::optimal);
      CHECK(report.optimum == oracle.weight);
      CHECK(is_tfree_bfactor(inst, report.factor));
    }
  }
}

TEST_CASE("solve: matching mode on the forbidden K3") {
  const auto report = solve(k3_instance(true, Mode::matching));
  REQUIRE(report.status == SolveStatus::optimal);
  CHECK(report.optimum == Rational(2));
  CHECK(report.factor.size() == 2);
}

TEST_CASE("solve: factor mode on the forbidden K3 is infeasible") {
  const auto report = solve(k3_instance(true));
  CHECK(report.status == SolveStatus::infeasible);
  CHECK(lp::farkas_proves_infeasible(report.final_model, report.farkas));
}

TEST_CASE("solve: empty instances") {
  Instance empty;
  empty.mode = Mode::factor;
  const auto r = solve(empty);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.optimum == Rational(0));
  CHECK(r.factor.empty());

  Instance isolated;
  isolated.graph = MultiGraph({1, 2}, {});
  isolated.b = {0, 0};
  const auto r2 = solve(isolated);
  REQUIRE(r2.status == SolveStatus::optimal);
  CHECK(r2.optimum == Rational(0));
}

TEST_CASE("solve: odd total degree short-circuits with a certificate") {
  Instance inst = k3_instance(false);
  inst.b = {1, 1, 1};
  const auto r = solve(inst);
  REQUIRE(r.status == SolveStatus::infeasible);
  CHECK(r.iterations == 1);
  CHECK(lp::farkas_proves_infeasible(r.final_model, r.farkas));
}

TEST_CASE("solve: adversarial instance lands on the only surviving factor") {
  const auto inst = adversarial_instance();
  const auto report = solve(inst);
  REQUIRE(report.status == SolveStatus::optimal);
  CHECK(report.optimum == Rational(6));
  CHECK(report.factor == EdgeSet{4, 5, 7, 8, 10, 11});
}

TEST_CASE("solve: invalid instances are rejected") {
  auto inst = k3_instance(true);
  inst.triangles.push_back({1, 2, 3});
  inst.triangles.push_back({1, 2, 3});
  CHECK_THROWS_AS(static_cast<void>(solve(inst)), Error);
}

TEST_CASE("solve: agreement with brute force on a quick random corpus") {
  int optimal_seen = 0, infeasible_seen = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomInstanceParams params;
    params.max_vertices = 5;
    params.max_edges = 8;
    params.mode = seed % 2 == 0 ? Mode::matching : Mode::factor;
    const Instance inst = random_instance(seed, params);
    const auto oracle = brute_force_optimum(inst);
    const auto report = solve(inst);
    if (oracle.status == OracleStatus::optimal) {
      ++optimal_seen;
      REQUIRE(report.status == SolveStatus::optimal);
      CHECK(report.optimum == oracle.weight);
      if (inst.mode == Mode::factor) CHECK(is_tfree_bfactor(inst, report.factor));
      else CHECK(is_tfree_bmatching(inst, report.factor));
      CHECK(set_weight(inst, report.factor) == report.optimum);
    } else {
      ++infeasible_seen;
      CHECK(report.status == SolveStatus::infeasible);
      CHECK(lp::farkas_proves_infeasible(report.final_model, report.farkas));
    }
  }
  CHECK(optimal_seen >= 10);
  CHECK(infeasible_seen >= 3);
}

TEST_CASE("solve: identical invocations give identical reports") {
  const Instance inst = random_instance(77);
  CHECK(report_fingerprint(solve(inst)) == report_fingerprint(solve(inst)));
}

TEST_CASE("solve: cut limit surfaces as an error") {
  SolveOptions opts;
  opts.max_cuts = 0;
  // The adversarial instance needs at least one odd cut.
  CHECK_THROWS_WITH_AS(static_cast<void>(solve(adversarial_instance(), opts)),
                       doctest::Contains("cut limit"), Error);
}
