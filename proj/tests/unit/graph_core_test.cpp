#include <doctest.h>

#include <algorithm>
#include <random>

#include "tfb/graph.hpp"
#include "tfb/sampling.hpp"

using namespace tfb;

namespace {

Instance make(std::vector<VertexId> vs, std::vector<int> b, std::vector<Edge> es,
              std::vector<std::array<EdgeId, 3>> ts = {}, Mode mode = Mode::factor) {
  Instance inst;
  inst.graph = MultiGraph(std::move(vs), std::move(es));
  inst.b = std::move(b);
  inst.weights.assign(inst.graph.num_edges(), Rational(1));
  inst.triangles = std::move(ts);
  inst.mode = mode;
  return inst;
}

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate: canonical triangle is ok") {
  const auto inst = k3_instance(true);
  CHECK(validate_instance(inst).empty());
  const auto ts = labeled_triangles(inst);
  REQUIRE(ts.size() == 1);
  // alpha=12, beta=23, gamma=31 gives corners (v1,v2,v3) = (1,2,3)
  CHECK(ts[0].vertex_ids == std::array<VertexId, 3>{1, 2, 3});
}

TEST_CASE("validate: shared edge between triangles") {
  auto inst = make({1, 2, 3, 4}, {2, 2, 2, 2},
                   {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}, {4, 2, 4}, {5, 4, 1}},
                   {{1, 2, 3}, {1, 4, 5}});
  const auto v = validate_instance(inst);
  CHECK(mentions(v, "not edge-disjoint"));
  CHECK(mentions(v, "edge 1"));
}

TEST_CASE("validate: parallel edge does not close a 3-cycle") {
  auto inst = make({1, 2, 3}, {2, 2, 2}, {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}, {4, 1, 2}},
                   {{1, 2, 4}});
  const auto v = validate_instance(inst);
  CHECK(mentions(v, "do not form a 3-cycle"));
}

TEST_CASE("validate: loops, unknown edges, negative b") {
  auto loopy = make({1, 2}, {2, 2}, {{1, 1, 1}, {2, 1, 2}, {3, 2, 1}}, {{1, 2, 3}});
  CHECK(mentions(validate_instance(loopy), "3-cycle"));
  auto missing = make({1, 2, 3}, {2, 2, 2}, {{1, 1, 2}, {2, 2, 3}}, {{1, 2, 9}});
  CHECK(mentions(validate_instance(missing), "unknown edge 9"));
  auto neg = make({1}, {-1}, {});
  CHECK(mentions(validate_instance(neg), "negative degree bound"));
}

TEST_CASE("is_tfree_bfactor") {
  const auto k3 = k3_instance(true);
  CHECK_FALSE(is_tfree_bfactor(k3, {1, 2, 3}));  // forbidden triangle is the whole factor
  const auto k3free = k3_instance(false);
  CHECK(is_tfree_bfactor(k3free, {1, 2, 3}));
  CHECK_FALSE(is_tfree_bfactor(k3free, {1, 2}));

  // single vertex, one self-loop, b = 2: the loop counts twice
  auto loop = make({1}, {2}, {{1, 1, 1}});
  CHECK(is_tfree_bfactor(loop, {1}));
  CHECK_FALSE(is_tfree_bfactor(loop, {}));

  CHECK_THROWS_AS(is_tfree_bfactor(k3, {99}), Error);
}

TEST_CASE("matching reduction: forced arithmetic of the construction") {
  auto inst = make({1}, {1}, {}, {}, Mode::matching);
  const auto red = reduce_matching_to_factor(inst);
  const Instance& f = red.factor_instance;
  CHECK(f.mode == Mode::factor);
  CHECK(f.graph.num_vertices() == 2);
  CHECK(red.dummy_vertex == 2);
  CHECK(f.b_of(red.dummy_vertex) == 1);
  REQUIRE(f.graph.num_edges() == 1);  // one v-D edge, zero loops
  CHECK_FALSE(f.graph.edges()[0].is_loop());
  CHECK(f.weight_of(f.graph.edges()[0].id) == Rational(0));
}

TEST_CASE("matching reduction preserves the optimum") {
  SUBCASE("K3 with forbidden triangle: optimum 2") {
    auto inst = k3_instance(true, Mode::matching);
    const auto direct = brute_force_optimum(inst);
    REQUIRE(direct.status == OracleStatus::optimal);
    CHECK(direct.weight == Rational(2));
    const auto red = reduce_matching_to_factor(inst);
    const auto reduced = brute_force_optimum(red.factor_instance);
    REQUIRE(reduced.status == OracleStatus::optimal);
    CHECK(reduced.weight == direct.weight);
  }
  SUBCASE("K3 without triangles: optimum 3") {
    auto inst = k3_instance(false, Mode::matching);
    const auto direct = brute_force_optimum(inst);
    REQUIRE(direct.status == OracleStatus::optimal);
    CHECK(direct.weight == Rational(3));
    const auto red = reduce_matching_to_factor(inst);
    const auto reduced = brute_force_optimum(red.factor_instance);
    CHECK(reduced.weight == direct.weight);
  }
  SUBCASE("random corpus, both sides enumerable") {
    std::mt19937_64 rng(11);
    int done = 0;
    for (std::uint64_t seed = 1; done < 25; ++seed) {
      RandomInstanceParams params;
      params.max_vertices = 4;
      params.max_edges = 5;
      params.max_b = 2;
      params.mode = Mode::matching;
      const Instance inst = random_instance(seed, params);
      const auto red = reduce_matching_to_factor(inst);
      if (red.factor_instance.graph.num_edges() > 24) continue;
      const auto direct = brute_force_optimum(inst);
      const auto reduced = brute_force_optimum(red.factor_instance);
      REQUIRE(direct.status == OracleStatus::optimal);  // empty set always matches
      REQUIRE(reduced.status == OracleStatus::optimal);
      CHECK(direct.weight == reduced.weight);
      // The reduced witness restricts to a valid matching of equal weight.
      const EdgeSet back = red.restrict(reduced.witness);
      CHECK(is_tfree_bmatching(inst, back));
      Rational w(0);
      for (EdgeId e : back) w += inst.weight_of(e);
      CHECK(w == direct.weight);
      ++done;
    }
  }
}

TEST_CASE("enumerate: K3 cases") {
  CHECK(enumerate_tfree_bfactors(k3_instance(true)).empty());
  const auto free3 = enumerate_tfree_bfactors(k3_instance(false));
  REQUIRE(free3.size() == 1);
  CHECK(free3[0] == EdgeSet{1, 2, 3});
}

TEST_CASE("enumerate: prism has exactly the Hamiltonian 2-factors") {
  const auto inst = prism_instance();
  const auto factors = enumerate_tfree_bfactors(inst);
  CHECK(factors.size() == 3);  // frozen regression value from this oracle
  for (const auto& m : factors) {
    CHECK(m.size() == 6);
    CHECK(is_tfree_bfactor(inst, m));
    // a Hamiltonian 2-factor uses exactly two rungs (edges 7,8,9)
    int rungs = 0;
    for (EdgeId e : m) rungs += e >= 7 ? 1 : 0;
    CHECK(rungs == 2);
  }
  CHECK(std::is_sorted(factors.begin(), factors.end()));
}

TEST_CASE("enumerate agrees with the predicate exhaustively") {
  auto exhaustive_count = [](const Instance& inst) {
    const auto& es = inst.graph.edges();
    long hits = 0;
    for (unsigned mask = 0; mask < (1u << es.size()); ++mask) {
      EdgeSet m;
      for (std::size_t i = 0; i < es.size(); ++i)
        if (mask & (1u << i)) m.push_back(es[i].id);
      m = normalized_edge_set(std::move(m));
      if (is_tfree_bfactor(inst, m)) ++hits;
    }
    return hits;
  };
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomInstanceParams params;
    params.max_vertices = 5;
    params.max_edges = 9;
    const Instance inst = random_instance(seed, params);
    const auto enumerated = enumerate_tfree_bfactors(inst);
    CHECK(static_cast<long>(enumerated.size()) == exhaustive_count(inst));
    for (const auto& m : enumerated) CHECK(is_tfree_bfactor(inst, m));
  }
}

TEST_CASE("enumerate: parity makes odd-total instances empty") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Instance inst = random_instance(seed);
    if (inst.b_total() % 2 == 0) continue;
    CHECK(enumerate_tfree_bfactors(inst).empty());
  }
}

TEST_CASE("enumeration bounds and caps") {
  std::vector<Edge> es;
  for (int i = 0; i < 25; ++i) es.push_back({i + 1, 1, 2});
  auto big = make({1, 2}, {1, 1}, std::move(es));
  CHECK_THROWS_WITH_AS(static_cast<void>(enumerate_tfree_bfactors(big)),
                       doctest::Contains("enumeration bound exceeded"), Error);
  EnumOptions loose;
  loose.max_edges = 30;
  loose.cap = 3;
  CHECK_THROWS_WITH_AS(static_cast<void>(enumerate_tfree_bfactors(big, loose)),
                       doctest::Contains("cap exceeded"), Error);
  auto matching = k3_instance(true, Mode::matching);
  CHECK_THROWS_AS(static_cast<void>(enumerate_tfree_bfactors(matching)), Error);
}

TEST_CASE("brute force optimum") {
  SUBCASE("K3 with forbidden triangle is infeasible") {
    const auto r = brute_force_optimum(k3_instance(true));
    CHECK(r.status == OracleStatus::infeasible);
  }
  SUBCASE("prism: Hamiltonian cycle worth 8") {
    const auto r = brute_force_optimum(prism_instance());
    REQUIRE(r.status == OracleStatus::optimal);
    CHECK(r.weight == Rational(8));
    CHECK(is_tfree_bfactor(prism_instance(), r.witness));
  }
  SUBCASE("K4 with one forbidden triangle: all 2-factors are 4-cycles") {
    const auto r = brute_force_optimum(k4_instance());
    REQUIRE(r.status == OracleStatus::optimal);
    CHECK(r.weight == Rational(4));
    CHECK(r.witness.size() == 4);
  }
  SUBCASE("witness is the lexicographically least optimum") {
    // two disjoint optimal loops with equal weight; {1} must win over {2}
    auto inst = make({1, 2}, {2, 2}, {{1, 1, 1}, {2, 1, 1}, {3, 2, 2}});
    const auto r = brute_force_optimum(inst);
    REQUIRE(r.status == OracleStatus::optimal);
    CHECK(r.witness == EdgeSet{1, 3});
  }
}

TEST_CASE("hull membership") {
  SUBCASE("prism at 2/3 is the average of the three Hamiltonian factors") {
    const auto inst = prism_instance();
    std::vector<Rational> x(9, Rational(2, 3));
    CHECK(hull_membership(inst, x).inside);
  }
  SUBCASE("K3 all-ones is the unique 2-factor") {
    std::vector<Rational> x(3, Rational(1));
    CHECK(hull_membership(k3_instance(false), x).inside);
  }
  SUBCASE("empty hull is always outside") {
    std::vector<Rational> x(3, Rational(1, 2));
    const auto r = hull_membership(k3_instance(true), x);
    CHECK_FALSE(r.inside);
    CHECK_FALSE(r.certificate.empty());
  }
  SUBCASE("every enumerated factor is inside; degree violations are outside") {
    const auto inst = prism_instance();
    for (const auto& m : enumerate_tfree_bfactors(inst)) {
      std::vector<Rational> x(inst.graph.num_edges(), Rational(0));
      for (EdgeId e : m) x[inst.graph.edge_index(e)] = Rational(1);
      CHECK(hull_membership(inst, x).inside);
    }
    std::vector<Rational> bad(inst.graph.num_edges(), Rational(1));  // degree 4 everywhere
    CHECK_FALSE(hull_membership(inst, bad).inside);
  }
}

TEST_CASE("adversarial fixture: in the b-factor polytope, outside the hull") {
  const auto inst = adversarial_instance();
  REQUIRE(validate_instance(inst).empty());
  const auto factors = enumerate_tfree_bfactors(inst);
  REQUIRE(factors.size() == 1);  // only the parallels survive
  CHECK(factors[0] == EdgeSet{4, 5, 7, 8, 10, 11});

  // Dropping the forbidden triangle: exactly two b-factors, whose midpoint
  // is the adversarial x.
  Instance relaxed = inst;
  relaxed.triangles.clear();
  const auto all = enumerate_tfree_bfactors(relaxed);
  REQUIRE(all.size() == 2);
  std::vector<Rational> x(inst.graph.num_edges(), Rational(1, 2));
  CHECK(hull_membership(relaxed, x).inside);
  CHECK_FALSE(hull_membership(inst, x).inside);
}
