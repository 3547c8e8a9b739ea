#include "tfb/sampling.hpp"

#include <algorithm>
#include <random>

#include "tfb/lp.hpp"

namespace tfb {

namespace {

Instance make_instance(std::vector<VertexId> vs, std::vector<int> b, std::vector<Edge> es,
                       std::vector<Rational> ws, std::vector<std::array<EdgeId, 3>> ts,
                       Mode mode) {
  Instance inst;
  inst.graph = MultiGraph(std::move(vs), std::move(es));
  inst.b = std::move(b);
  inst.weights = std::move(ws);
  inst.triangles = std::move(ts);
  inst.mode = mode;
  return inst;
}

}  // namespace

Instance k3_instance(bool forbid_triangle, Mode mode) {
  std::vector<std::array<EdgeId, 3>> ts;
  if (forbid_triangle) ts.push_back({1, 2, 3});
  return make_instance({1, 2, 3}, {2, 2, 2}, {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}},
                       {Rational(1), Rational(1), Rational(1)}, std::move(ts), mode);
}

Instance k4_instance() {
  return make_instance({1, 2, 3, 4}, {2, 2, 2, 2},
                       {{1, 1, 2}, {2, 1, 3}, {3, 1, 4}, {4, 2, 3}, {5, 2, 4}, {6, 3, 4}},
                       std::vector<Rational>(6, Rational(1)), {{1, 4, 2}}, Mode::factor);
}

Instance prism_instance() {
  std::vector<Rational> ws(9, Rational(0));
  for (int i = 0; i < 6; ++i) ws[i] = Rational(2);
  return make_instance(
      {1, 2, 3, 4, 5, 6}, std::vector<int>(6, 2),
      {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}, {4, 4, 5}, {5, 5, 6}, {6, 6, 4}, {7, 1, 4}, {8, 2, 5},
       {9, 3, 6}},
      std::move(ws), {{1, 2, 3}, {4, 5, 6}}, Mode::factor);
}

Instance selfloop_pair_instance() {
  return make_instance({1, 2}, {1, 1}, {{1, 1, 1}, {2, 2, 2}}, {Rational(0), Rational(0)}, {},
                       Mode::factor);
}

Instance adversarial_instance() {
  // Corners 1,2,3 carry the forbidden triangle; helper h_i = i + 3 hangs on
  // corner i via two parallel edges and has a private loop. The only two
  // b-factors are "triangle + all loops" and "all parallels".
  std::vector<VertexId> vs = {1, 2, 3, 4, 5, 6};
  std::vector<int> b(6, 2);
  std::vector<Edge> es = {
      {1, 1, 2}, {2, 2, 3}, {3, 3, 1},                                      // triangle
      {4, 1, 4}, {5, 1, 4}, {6, 4, 4},                                      // cluster at 1
      {7, 2, 5}, {8, 2, 5}, {9, 5, 5},                                      // cluster at 2
      {10, 3, 6}, {11, 3, 6}, {12, 6, 6},                                   // cluster at 3
  };
  std::vector<Rational> ws(12, Rational(1));
  return make_instance(std::move(vs), std::move(b), std::move(es), std::move(ws), {{1, 2, 3}},
                       Mode::factor);
}

ExtendedPoint adversarial_point(const Instance& inst) {
  ExtendedPoint p;
  p.x.assign(inst.graph.num_edges(), Rational(1, 2));
  p.y.resize(1);
  auto& y = p.y[0];
  y.fill(Rational(0));
  y[0b000] = Rational(1, 6);
  y[0b100] = Rational(1, 6);  // gamma alone
  y[0b011] = Rational(1, 3);  // {alpha, beta}
  y[0b101] = Rational(1, 6);  // {alpha, gamma}
  y[0b110] = Rational(1, 6);  // {beta, gamma}
  return p;
}

Instance random_instance(std::uint64_t seed, const RandomInstanceParams& params) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  const int n = draw(params.min_vertices, params.max_vertices);
  const int m = draw(params.min_edges, params.max_edges);
  std::vector<VertexId> vs(n);
  std::vector<int> b(n);
  for (int i = 0; i < n; ++i) {
    vs[i] = i + 1;
    b[i] = draw(0, params.max_b);
  }
  std::vector<Edge> es;
  std::vector<Rational> ws;
  for (int e = 0; e < m; ++e) {
    const VertexId u = draw(1, n);
    // one in eight edges becomes a self-loop
    const VertexId v = draw(0, 7) == 0 ? u : draw(1, n);
    es.push_back({e + 1, u, v});
    ws.push_back(Rational(draw(-4, 8), draw(1, 4)));
  }
  MultiGraph g(vs, es);

  // All triangles of the drawn graph, then a random greedy edge-disjoint
  // selection of at most max_triangles of them.
  std::vector<std::array<EdgeId, 3>> all;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (make_triangle(g, {es[i].id, es[j].id, es[k].id}))
          all.push_back({es[i].id, es[j].id, es[k].id});
  std::shuffle(all.begin(), all.end(), rng);
  const int want = params.max_triangles > 0 ? draw(0, params.max_triangles) : 0;
  std::vector<std::array<EdgeId, 3>> chosen;
  std::vector<EdgeId> used;
  for (const auto& t : all) {
    if (static_cast<int>(chosen.size()) >= want) break;
    bool clash = false;
    for (EdgeId e : t)
      if (std::find(used.begin(), used.end(), e) != used.end()) clash = true;
    if (clash) continue;
    chosen.push_back(t);
    for (EdgeId e : t) used.push_back(e);
  }
  std::sort(chosen.begin(), chosen.end());

  return make_instance(std::move(vs), std::move(b), std::move(es), std::move(ws),
                       std::move(chosen), params.mode);
}

std::vector<ExtendedPoint> sample_extended_points(const Instance& inst, int count,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  BaseModel base = build_base_model(inst);
  std::vector<ExtendedPoint> points;

  auto point_from = [&](const lp::LpResult& res) {
    ExtendedPoint p;
    for (int var : base.x_var) p.x.push_back(res.point[var]);
    p.y.resize(base.y_var.size());
    for (std::size_t t = 0; t < base.y_var.size(); ++t)
      for (int j = 0; j < kNumYSubsets; ++j) p.y[t][j] = res.point[base.y_var[t][j]];
    return p;
  };

  while (static_cast<int>(points.size()) < count) {
    std::vector<lp::Term> obj;
    for (int var : base.x_var) obj.push_back({var, Rational(draw(-6, 6), draw(1, 3))});
    for (const auto& yv : base.y_var)
      for (int var : yv) obj.push_back({var, Rational(draw(-6, 6), draw(1, 3))});
    base.model.set_objective(lp::Sense::maximize, std::move(obj));
    const lp::LpResult res = lp::solve(base.model);
    if (res.status != lp::Status::optimal) return {};  // base polytope empty
    points.push_back(point_from(res));

    // Blend with the previous vertex for interior points.
    if (points.size() >= 2 && static_cast<int>(points.size()) < count) {
      const int den = draw(2, 5);
      const Rational lambda(draw(1, den - 1), den);
      const ExtendedPoint& a = points[points.size() - 2];
      const ExtendedPoint& bpt = points[points.size() - 1];
      ExtendedPoint mid;
      for (std::size_t i = 0; i < a.x.size(); ++i)
        mid.x.push_back(lambda * a.x[i] + (Rational(1) - lambda) * bpt.x[i]);
      mid.y.resize(a.y.size());
      for (std::size_t t = 0; t < a.y.size(); ++t)
        for (int j = 0; j < kNumYSubsets; ++j)
          mid.y[t][j] = lambda * a.y[t][j] + (Rational(1) - lambda) * bpt.y[t][j];
      points.push_back(std::move(mid));
    }
  }
  points.resize(count);
  return points;
}

}  // namespace tfb
