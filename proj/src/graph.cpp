#include "tfb/graph.hpp"

#include <algorithm>
#include <set>

#include "tfb/lp.hpp"

namespace tfb {

MultiGraph::MultiGraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_index_.emplace(vertices_[i], static_cast<int>(i)).second)
      throw Error("duplicate vertex id " + std::to_string(vertices_[i]));
  }
  incident_.resize(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!edge_index_.emplace(e.id, static_cast<int>(i)).second)
      throw Error("duplicate edge id " + std::to_string(e.id));
    if (!has_vertex(e.u) || !has_vertex(e.v))
      throw Error("edge " + std::to_string(e.id) + " references unknown vertex");
    incident_[vertex_index_.at(e.u)].push_back(e.id);
    if (!e.is_loop()) incident_[vertex_index_.at(e.v)].push_back(e.id);
  }
  for (auto& lst : incident_) std::sort(lst.begin(), lst.end());
}

int MultiGraph::vertex_index(VertexId v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw Error("unknown vertex id " + std::to_string(v));
  return it->second;
}

int MultiGraph::edge_index(EdgeId e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw Error("unknown edge id " + std::to_string(e));
  return it->second;
}

const std::vector<EdgeId>& MultiGraph::incident(VertexId v) const {
  return incident_[vertex_index(v)];
}

EdgeSet normalized_edge_set(EdgeSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool edge_set_contains(const EdgeSet& s, EdgeId e) {
  return std::binary_search(s.begin(), s.end(), e);
}

long Instance::b_total() const {
  long total = 0;
  for (int bv : b) total += bv;
  return total;
}

std::optional<Triangle> make_triangle(const MultiGraph& g, const std::array<EdgeId, 3>& eids) {
  if (eids[0] == eids[1] || eids[1] == eids[2] || eids[0] == eids[2]) return std::nullopt;
  std::array<Edge, 3> es;
  for (int i = 0; i < 3; ++i) {
    if (!g.has_edge(eids[i])) return std::nullopt;
    es[i] = g.edge(eids[i]);
    if (es[i].is_loop()) return std::nullopt;
  }
  // A 3-cycle on distinct vertices: exactly three distinct endpoints, each
  // incident to exactly two of the three edges.
  std::map<VertexId, int> count;
  for (const Edge& e : es) {
    count[e.u]++;
    count[e.v]++;
  }
  if (count.size() != 3) return std::nullopt;
  for (const auto& [v, c] : count)
    if (c != 2) return std::nullopt;

  auto shared = [](const Edge& a, const Edge& b) -> VertexId {
    if (a.u == b.u || a.u == b.v) return a.u;
    return a.v;
  };
  Triangle t;
  t.edge_ids = eids;
  // alpha = v1v2, beta = v2v3, gamma = v3v1
  t.vertex_ids[1] = shared(es[0], es[1]);  // v2 on alpha and beta
  t.vertex_ids[2] = shared(es[1], es[2]);  // v3 on beta and gamma
  t.vertex_ids[0] = shared(es[2], es[0]);  // v1 on gamma and alpha
  return t;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  const MultiGraph& g = inst.graph;

  if (inst.b.size() != g.num_vertices())
    violations.push_back("degree bound vector has wrong length");
  for (std::size_t i = 0; i < inst.b.size() && i < g.num_vertices(); ++i)
    if (inst.b[i] < 0)
      violations.push_back("negative degree bound at vertex " + std::to_string(g.vertices()[i]));
  if (inst.weights.size() != g.num_edges())
    violations.push_back("weight vector has wrong length");

  for (std::size_t ti = 0; ti < inst.triangles.size(); ++ti) {
    const auto& eids = inst.triangles[ti];
    bool all_exist = true;
    for (EdgeId e : eids)
      if (!g.has_edge(e)) {
        violations.push_back("triangle " + std::to_string(ti) + " references unknown edge " +
                             std::to_string(e));
        all_exist = false;
      }
    if (!all_exist) continue;
    if (!make_triangle(g, eids))
      violations.push_back("triangle " + std::to_string(ti) +
                           ": edges do not form a 3-cycle (" + std::to_string(eids[0]) + "," +
                           std::to_string(eids[1]) + "," + std::to_string(eids[2]) + ")");
  }

  // Pairwise edge-disjointness over the declared triangles.
  std::map<EdgeId, std::size_t> first_use;
  for (std::size_t ti = 0; ti < inst.triangles.size(); ++ti) {
    for (EdgeId e : inst.triangles[ti]) {
      auto [it, fresh] = first_use.emplace(e, ti);
      if (!fresh && it->second != ti)
        violations.push_back("triangles not edge-disjoint: edge " + std::to_string(e) +
                             " shared by triangles " + std::to_string(it->second) + " and " +
                             std::to_string(ti));
    }
  }
  return violations;
}

std::vector<Triangle> labeled_triangles(const Instance& inst) {
  std::vector<Triangle> out;
  out.reserve(inst.triangles.size());
  for (const auto& eids : inst.triangles) {
    auto t = make_triangle(inst.graph, eids);
    if (!t) throw Error("instance has an invalid triangle; run validate_instance first");
    out.push_back(*t);
  }
  return out;
}

namespace {

std::vector<int> degrees_of(const Instance& inst, const EdgeSet& m) {
  std::vector<int> deg(inst.graph.num_vertices(), 0);
  for (EdgeId e : m) {
    const Edge& ed = inst.graph.edge(e);  // throws on unknown id
    deg[inst.graph.vertex_index(ed.u)] += ed.is_loop() ? 2 : 1;
    if (!ed.is_loop()) deg[inst.graph.vertex_index(ed.v)] += 1;
  }
  return deg;
}

bool avoids_triangles(const Instance& inst, const EdgeSet& m) {
  for (const auto& eids : inst.triangles) {
    bool all = true;
    for (EdgeId e : eids)
      if (!edge_set_contains(m, e)) {
        all = false;
        break;
      }
    if (all) return false;
  }
  return true;
}

}  // namespace

bool is_tfree_bfactor(const Instance& inst, const EdgeSet& m) {
  const auto deg = degrees_of(inst, m);
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] != inst.b[i]) return false;
  return avoids_triangles(inst, m);
}

bool is_tfree_bmatching(const Instance& inst, const EdgeSet& m) {
  const auto deg = degrees_of(inst, m);
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] > inst.b[i]) return false;
  return avoids_triangles(inst, m);
}

EdgeSet MatchingReduction::restrict(const EdgeSet& m) const {
  EdgeSet out;
  for (EdgeId e : m)
    if (edge_set_contains(original_edges, e)) out.push_back(e);
  return out;
}

MatchingReduction reduce_matching_to_factor(const Instance& inst) {
  if (inst.mode != Mode::matching)
    throw Error("reduce_matching_to_factor requires a matching-mode instance");

  VertexId dummy = 0;
  for (VertexId v : inst.graph.vertices()) dummy = std::max(dummy, v);
  dummy += 1;
  EdgeId next_edge = 0;
  for (const Edge& e : inst.graph.edges()) next_edge = std::max(next_edge, e.id);
  next_edge += 1;

  std::vector<VertexId> vertices = inst.graph.vertices();
  vertices.push_back(dummy);
  std::vector<Edge> edges = inst.graph.edges();
  std::vector<Rational> weights = inst.weights;
  std::vector<int> b = inst.b;

  const long b_dummy = inst.b_total();
  for (std::size_t i = 0; i < inst.graph.num_vertices(); ++i) {
    for (int k = 0; k < inst.b[i]; ++k) {
      edges.push_back({next_edge++, inst.graph.vertices()[i], dummy});
      weights.push_back(Rational(0));
    }
  }
  for (long k = 0; k < b_dummy / 2; ++k) {
    edges.push_back({next_edge++, dummy, dummy});
    weights.push_back(Rational(0));
  }
  b.push_back(static_cast<int>(b_dummy));

  MatchingReduction red;
  red.factor_instance = Instance{MultiGraph(std::move(vertices), std::move(edges)), std::move(b),
                                 inst.triangles, std::move(weights), Mode::factor};
  red.dummy_vertex = dummy;
  EdgeSet orig;
  for (const Edge& e : inst.graph.edges()) orig.push_back(e.id);
  red.original_edges = normalized_edge_set(std::move(orig));
  return red;
}

namespace {

// DFS over edges in id order with residual degree-feasibility pruning.
// Visits every subset that can still become a b-factor; calls sink on hits.
class FactorEnumerator {
 public:
  FactorEnumerator(const Instance& inst, const EnumOptions& opts)
      : inst_(inst), opts_(opts) {
    if (inst.mode != Mode::factor)
      throw Error("enumerate_tfree_bfactors requires a factor-mode instance");
    if (static_cast<int>(inst.graph.num_edges()) > opts.max_edges)
      throw Error("enumeration bound exceeded: " + std::to_string(inst.graph.num_edges()) +
                  " edges > " + std::to_string(opts.max_edges));
    order_ = inst.graph.edges();
    std::sort(order_.begin(), order_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    deg_.assign(inst.graph.num_vertices(), 0);
    // rem_[i][v]: degree still obtainable at v from edges order_[i..].
    rem_.assign(order_.size() + 1, std::vector<int>(inst.graph.num_vertices(), 0));
    for (int i = static_cast<int>(order_.size()) - 1; i >= 0; --i) {
      rem_[i] = rem_[i + 1];
      const Edge& e = order_[i];
      rem_[i][inst.graph.vertex_index(e.u)] += e.is_loop() ? 2 : 1;
      if (!e.is_loop()) rem_[i][inst.graph.vertex_index(e.v)] += 1;
    }
  }

  std::vector<EdgeSet> run() {
    results_.clear();
    chosen_.clear();
    dfs(0);
    std::sort(results_.begin(), results_.end());
    return results_;
  }

 private:
  bool feasible_at(std::size_t i) const {
    for (std::size_t v = 0; v < deg_.size(); ++v) {
      if (deg_[v] > inst_.b[v]) return false;
      if (deg_[v] + rem_[i][v] < inst_.b[v]) return false;
    }
    return true;
  }

  void dfs(std::size_t i) {
    if (!feasible_at(i)) return;
    if (i == order_.size()) {
      EdgeSet m = normalized_edge_set(chosen_);
      if (avoids_triangles(inst_, m)) {
        results_.push_back(std::move(m));
        if (static_cast<long>(results_.size()) > opts_.cap)
          throw Error("enumeration cap exceeded (" + std::to_string(opts_.cap) + ")");
      }
      return;
    }
    const Edge& e = order_[i];
    const int iu = inst_.graph.vertex_index(e.u);
    const int iv = inst_.graph.vertex_index(e.v);
    // include
    deg_[iu] += e.is_loop() ? 2 : 1;
    if (!e.is_loop()) deg_[iv] += 1;
    chosen_.push_back(e.id);
    dfs(i + 1);
    chosen_.pop_back();
    deg_[iu] -= e.is_loop() ? 2 : 1;
    if (!e.is_loop()) deg_[iv] -= 1;
    // exclude
    dfs(i + 1);
  }

  const Instance& inst_;
  EnumOptions opts_;
  std::vector<Edge> order_;
  std::vector<int> deg_;
  std::vector<std::vector<int>> rem_;
  std::vector<EdgeId> chosen_;
  std::vector<EdgeSet> results_;
};

}  // namespace

std::vector<EdgeSet> enumerate_tfree_bfactors(const Instance& inst, const EnumOptions& opts) {
  return FactorEnumerator(inst, opts).run();
}

BruteForceResult brute_force_optimum(const Instance& inst, const EnumOptions& opts) {
  if (static_cast<int>(inst.graph.num_edges()) > opts.max_edges)
    throw Error("enumeration bound exceeded: " + std::to_string(inst.graph.num_edges()) +
                " edges > " + std::to_string(opts.max_edges));

  std::vector<EdgeSet> candidates;
  if (inst.mode == Mode::factor) {
    candidates = enumerate_tfree_bfactors(inst, opts);
  } else {
    // Matching mode: plain subset DFS; T-freeness and degree caps checked
    // at the leaves (degree cap also prunes).
    const auto& edges = inst.graph.edges();
    std::vector<Edge> order = edges;
    std::sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    std::vector<int> deg(inst.graph.num_vertices(), 0);
    EdgeSet chosen;
    std::vector<EdgeSet> found;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
      if (i == order.size()) {
        EdgeSet m = normalized_edge_set(chosen);
        if (avoids_triangles(inst, m)) found.push_back(std::move(m));
        return;
      }
      const Edge& e = order[i];
      const int iu = inst.graph.vertex_index(e.u);
      const int iv = inst.graph.vertex_index(e.v);
      const int du = e.is_loop() ? 2 : 1;
      if (deg[iu] + du <= inst.b[iu] && (e.is_loop() || deg[iv] + 1 <= inst.b[iv])) {
        deg[iu] += du;
        if (!e.is_loop()) deg[iv] += 1;
        chosen.push_back(e.id);
        self(self, i + 1);
        chosen.pop_back();
        deg[iu] -= du;
        if (!e.is_loop()) deg[iv] -= 1;
      }
      self(self, i + 1);
    };
    dfs(dfs, 0);
    std::sort(found.begin(), found.end());
    candidates = std::move(found);
  }

  if (candidates.empty()) return {OracleStatus::infeasible, Rational(0), {}};

  bool have = false;
  Rational best(0);
  EdgeSet witness;
  for (const EdgeSet& m : candidates) {
    Rational w(0);
    for (EdgeId e : m) w += inst.weight_of(e);
    if (!have || w > best) {
      have = true;
      best = w;
      witness = m;  // candidates are in lexicographic order; first best wins
    }
  }
  return {OracleStatus::optimal, best, witness};
}

HullResult hull_membership(const Instance& inst, const std::vector<Rational>& x_by_edge_index,
                           const EnumOptions& opts) {
  if (x_by_edge_index.size() != inst.graph.num_edges())
    throw Error("hull_membership: point has wrong dimension");
  const auto factors = enumerate_tfree_bfactors(inst, opts);

  // Feasibility LP: lambda >= 0, sum_i lambda_i x_{M_i}(e) = x(e) per edge,
  // sum_i lambda_i = 1.
  lp::LpModel model;
  std::vector<int> lambda;
  lambda.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i)
    lambda.push_back(model.add_variable(Rational(0), std::nullopt));
  for (std::size_t ei = 0; ei < inst.graph.num_edges(); ++ei) {
    lp::Row row;
    const EdgeId eid = inst.graph.edges()[ei].id;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (edge_set_contains(factors[i], eid)) row.terms.push_back({lambda[i], Rational(1)});
    row.rel = lp::Rel::eq;
    row.rhs = x_by_edge_index[ei];
    model.add_row(std::move(row));
  }
  {
    lp::Row row;
    for (int v : lambda) row.terms.push_back({v, Rational(1)});
    row.rel = lp::Rel::eq;
    row.rhs = Rational(1);
    model.add_row(std::move(row));
  }
  model.set_objective(lp::Sense::maximize, {});
  const lp::LpResult res = lp::solve(model);
  if (res.status == lp::Status::optimal) return {true, {}};
  TFB_CHECK(res.status == lp::Status::infeasible, "hull membership LP cannot be unbounded");
  TFB_CHECK(lp::farkas_proves_infeasible(model, res.farkas),
            "hull membership certificate failed verification");
  return {false, res.farkas};
}

}  // namespace tfb
