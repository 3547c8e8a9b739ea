#include "tfb/separation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace tfb {

namespace {

// Indexed flow network used by max_flow and the Gomory-Hu construction.
// An undirected edge becomes a pair of antiparallel arcs of full capacity.
struct FlowNet {
  struct Arc {
    int to;
    Rational cap;  // residual
    int rev;       // index of the reverse arc in adj[to]
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowNet(int n) : adj(n) {}

  void add_edge(int u, int v, const Rational& cap) {
    if (u == v) return;
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, cap, static_cast<int>(adj[u].size()) - 1});
  }

  // Edmonds-Karp; returns the flow value, leaves the residual in place.
  Rational run(int s, int t) {
    Rational total(0);
    for (;;) {
      std::vector<int> prev_node(adj.size(), -1), prev_arc(adj.size(), -1);
      std::queue<int> q;
      q.push(s);
      prev_node[s] = s;
      while (!q.empty() && prev_node[t] < 0) {
        const int u = q.front();
        q.pop();
        for (std::size_t a = 0; a < adj[u].size(); ++a) {
          const Arc& arc = adj[u][a];
          if (prev_node[arc.to] >= 0 || arc.cap.is_zero()) continue;
          prev_node[arc.to] = u;
          prev_arc[arc.to] = static_cast<int>(a);
          q.push(arc.to);
        }
      }
      if (prev_node[t] < 0) return total;
      // Bottleneck along the path.
      Rational aug;
      bool first = true;
      for (int v = t; v != s; v = prev_node[v]) {
        const Arc& arc = adj[prev_node[v]][prev_arc[v]];
        if (first || arc.cap < aug) aug = arc.cap;
        first = false;
      }
      for (int v = t; v != s; v = prev_node[v]) {
        Arc& arc = adj[prev_node[v]][prev_arc[v]];
        arc.cap -= aug;
        adj[v][arc.rev].cap += aug;
      }
      total += aug;
    }
  }

  // Residual-reachable set from s (the canonical minimum cut side).
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(adj.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Arc& arc : adj[u]) {
        if (seen[arc.to] || arc.cap.is_zero()) continue;
        seen[arc.to] = true;
        q.push(arc.to);
      }
    }
    return seen;
  }
};

struct IndexedCut {
  Rational value;
  std::vector<bool> side;
};

IndexedCut indexed_max_flow(int n, const std::vector<std::tuple<int, int, Rational>>& edges,
                            int s, int t) {
  FlowNet net(n);
  for (const auto& [u, v, cap] : edges) net.add_edge(u, v, cap);
  IndexedCut out;
  out.value = net.run(s, t);
  out.side = net.source_side(s);
  return out;
}

}  // namespace

MaxFlowResult max_flow(const MultiGraph& g, const std::vector<Rational>& cap, VertexId s,
                       VertexId t) {
  if (cap.size() != g.num_edges()) throw Error("max_flow: capacity vector has wrong length");
  for (const Rational& c : cap)
    if (c.sign() < 0) throw Error("max_flow: negative capacity");
  if (s == t) throw Error("max_flow: source equals sink");
  const int si = g.vertex_index(s), ti = g.vertex_index(t);

  std::vector<std::tuple<int, int, Rational>> edges;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    edges.emplace_back(g.vertex_index(e.u), g.vertex_index(e.v), cap[g.edge_index(e.id)]);
  }
  const IndexedCut cut = indexed_max_flow(static_cast<int>(g.num_vertices()), edges, si, ti);
  MaxFlowResult out;
  out.value = cut.value;
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    if (cut.side[i]) out.source_side.push_back(g.vertices()[i]);
  std::sort(out.source_side.begin(), out.source_side.end());
  return out;
}

GomoryHuTree gomory_hu(const MultiGraph& g, const std::vector<Rational>& cap) {
  if (g.num_vertices() == 0) throw Error("gomory_hu: empty vertex set");
  if (cap.size() != g.num_edges()) throw Error("gomory_hu: capacity vector has wrong length");
  for (const Rational& c : cap)
    if (c.sign() < 0) throw Error("gomory_hu: negative capacity");

  const int n = static_cast<int>(g.num_vertices());
  GomoryHuTree out;
  out.nodes = g.vertices();
  if (n == 1) return out;

  std::vector<std::pair<int, int>> plain_edges;  // by vertex index, loops dropped
  std::vector<Rational> plain_cap;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    plain_edges.emplace_back(g.vertex_index(e.u), g.vertex_index(e.v));
    plain_cap.push_back(cap[g.edge_index(e.id)]);
  }

  // Supernode tree; groups split until all are singletons. Every max flow
  // runs on the graph with the other tree branches contracted, which keeps
  // the fundamental-cut property exact.
  std::vector<std::vector<int>> members;  // by group, sorted vertex indices
  std::vector<int> group_of(n, 0);
  {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    members.push_back(std::move(all));
  }
  struct GroupEdge {
    int a, b;
    Rational cap;
  };
  std::vector<GroupEdge> tree;

  for (;;) {
    int gidx = -1;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].size() >= 2) {
        gidx = static_cast<int>(i);
        break;
      }
    if (gidx < 0) break;

    // Components of the tree with gidx removed.
    std::vector<std::vector<int>> adj(members.size());
    for (std::size_t te = 0; te < tree.size(); ++te) {
      adj[tree[te].a].push_back(static_cast<int>(te));
      adj[tree[te].b].push_back(static_cast<int>(te));
    }
    std::vector<int> comp(members.size(), -1);
    int ncomp = 0;
    for (std::size_t start = 0; start < members.size(); ++start) {
      if (comp[start] >= 0 || static_cast<int>(start) == gidx) continue;
      std::queue<int> q;
      q.push(static_cast<int>(start));
      comp[start] = ncomp;
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int te : adj[u]) {
          const int w = tree[te].a == u ? tree[te].b : tree[te].a;
          if (w == gidx || comp[w] >= 0) continue;
          comp[w] = ncomp;
          q.push(w);
        }
      }
      ++ncomp;
    }

    // Flow nodes: members of the group, then one meta node per component.
    const auto& mem = members[gidx];
    std::map<int, int> node_of;  // vertex index -> flow node
    for (std::size_t i = 0; i < mem.size(); ++i) node_of[mem[i]] = static_cast<int>(i);
    const int meta0 = static_cast<int>(mem.size());
    auto flow_node = [&](int vidx) {
      const int grp = group_of[vidx];
      return grp == gidx ? node_of.at(vidx) : meta0 + comp[grp];
    };
    std::map<std::pair<int, int>, Rational> merged;
    for (std::size_t e = 0; e < plain_edges.size(); ++e) {
      int a = flow_node(plain_edges[e].first);
      int b = flow_node(plain_edges[e].second);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      merged[{a, b}] += plain_cap[e];
    }
    std::vector<std::tuple<int, int, Rational>> fedges;
    for (const auto& [key, c] : merged) fedges.emplace_back(key.first, key.second, c);

    const IndexedCut cut =
        indexed_max_flow(meta0 + ncomp, fedges, node_of.at(mem[0]), node_of.at(mem[1]));

    std::vector<int> keep, split;
    for (int vidx : mem) (cut.side[node_of.at(vidx)] ? keep : split).push_back(vidx);
    TFB_CHECK(!keep.empty() && !split.empty(), "gomory_hu split left a side empty");
    const int hidx = static_cast<int>(members.size());
    members[gidx] = keep;
    members.push_back(split);
    for (int vidx : split) group_of[vidx] = hidx;
    for (GroupEdge& te : tree) {
      const bool at_a = te.a == gidx, at_b = te.b == gidx;
      if (!at_a && !at_b) continue;
      const int nb = at_a ? te.b : te.a;
      if (!cut.side[meta0 + comp[nb]]) (at_a ? te.a : te.b) = hidx;
    }
    tree.push_back({gidx, hidx, cut.value});
  }

  for (const GroupEdge& te : tree) {
    TFB_CHECK(members[te.a].size() == 1 && members[te.b].size() == 1,
              "gomory_hu finished with a non-singleton group");
    out.edges.push_back(
        {g.vertices()[members[te.a][0]], g.vertices()[members[te.b][0]], te.cap});
  }
  return out;
}

Rational tree_path_min(const GomoryHuTree& tree, VertexId s, VertexId t) {
  if (s == t) throw Error("tree_path_min: endpoints coincide");
  std::map<VertexId, std::vector<int>> adj;
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    adj[tree.edges[i].u].push_back(static_cast<int>(i));
    adj[tree.edges[i].v].push_back(static_cast<int>(i));
  }
  // DFS from s to t tracking the minimum capacity seen.
  std::map<VertexId, std::pair<VertexId, int>> parent;  // node -> (prev, edge)
  std::vector<VertexId> stack = {s};
  parent[s] = {s, -1};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    if (u == t) break;
    for (int ei : adj[u]) {
      const auto& e = tree.edges[ei];
      const VertexId w = e.u == u ? e.v : e.u;
      if (parent.count(w)) continue;
      parent[w] = {u, ei};
      stack.push_back(w);
    }
  }
  if (!parent.count(t)) throw Error("tree_path_min: nodes not connected in tree");
  std::optional<Rational> best;
  for (VertexId v = t; v != s; v = parent[v].first) {
    const Rational& c = tree.edges[parent[v].second].capacity;
    if (!best || c < *best) best = c;
  }
  return *best;
}

TransformedGraph transform(const Instance& inst, const ExtendedPoint& point) {
  check_point_dims(inst, point);
  {
    const auto bad =
        check_point(inst, point, {Family::f2, Family::f5, Family::f6, Family::f7});
    if (bad)
      throw Error("transform precondition violated: family " + family_label(bad->family) +
                  " at " + bad->detail);
  }
  const auto triangles = labeled_triangles(inst);

  TransformedGraph tg;
  tg.triangles = triangles;
  VertexId next_v = 0;
  for (VertexId v : inst.graph.vertices()) next_v = std::max(next_v, v);
  next_v += 1;
  EdgeId next_e = 0;
  for (const Edge& e : inst.graph.edges()) next_e = std::max(next_e, e.id);
  next_e += 1;

  std::set<EdgeId> triangle_edges;
  for (const auto& t : triangles)
    for (EdgeId e : t.edge_ids) triangle_edges.insert(e);

  std::vector<VertexId> vertices = inst.graph.vertices();
  std::vector<Edge> edges;
  std::vector<Rational> xs;
  for (const Edge& e : inst.graph.edges()) {
    if (triangle_edges.count(e.id)) continue;
    edges.push_back(e);
    xs.push_back(point.x[inst.graph.edge_index(e.id)]);
    tg.original_edges.push_back(e.id);
  }
  tg.original_edges = normalized_edge_set(std::move(tg.original_edges));

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const VertexId r = next_v++;
    vertices.push_back(r);
    tg.r_vertex.push_back(r);
    const auto xv = [&](int pos) {
      return point.x[inst.graph.edge_index(triangles[t].edge_ids[pos])];
    };
    // e_i joins r to v_i; value = sum of x on the two triangle edges at v_i
    // minus twice the y of that pair.
    const std::array<Rational, 3> star_x = {
        xv(0) + xv(2) - Rational(2) * point.y[t][0b101],
        xv(0) + xv(1) - Rational(2) * point.y[t][0b011],
        xv(1) + xv(2) - Rational(2) * point.y[t][0b110],
    };
    std::array<EdgeId, 3> star_ids;
    for (int i = 0; i < 3; ++i) {
      TFB_CHECK(star_x[i] >= Rational(0) && star_x[i] <= Rational(1),
                "transformed value outside [0,1] at triangle " + std::to_string(t));
      star_ids[i] = next_e++;
      edges.push_back({star_ids[i], r, triangles[t].vertex_ids[i]});
      xs.push_back(star_x[i]);
    }
    tg.star.push_back(star_ids);
  }

  tg.graph = MultiGraph(std::move(vertices), std::move(edges));
  tg.x = std::move(xs);
  tg.b.assign(tg.graph.num_vertices(), 0);
  for (std::size_t i = 0; i < inst.graph.num_vertices(); ++i)
    tg.b[tg.graph.vertex_index(inst.graph.vertices()[i])] = inst.b[i];
  return tg;
}

namespace {

long b_sum(const std::vector<int>& b) {
  long s = 0;
  for (int v : b) s += v;
  return s;
}

OddCutResult finish_odd_cut(const MultiGraph& g, const std::vector<int>& b,
                            const std::vector<Rational>& x, std::vector<VertexId> s,
                            EdgeSet f0, EdgeSet f1) {
  OddCutResult r;
  std::sort(s.begin(), s.end());
  r.s = std::move(s);
  r.f0 = normalized_edge_set(std::move(f0));
  r.f1 = normalized_edge_set(std::move(f1));
  r.value = Rational(0);
  for (EdgeId e : r.f0) r.value += x[g.edge_index(e)];
  for (EdgeId e : r.f1) r.value += Rational(1) - x[g.edge_index(e)];
  long bs = 0;
  for (VertexId v : r.s) bs += b[g.vertex_index(v)];
  TFB_CHECK((bs + static_cast<long>(r.f1.size())) % 2 == 1, "odd cut result has even parity");
  return r;
}

}  // namespace

std::optional<OddCutResult> min_odd_cut(const MultiGraph& g, const std::vector<int>& b,
                                        const std::vector<Rational>& x) {
  if (g.num_vertices() == 0) throw Error("min_odd_cut: empty graph");
  if (x.size() != g.num_edges() || b.size() != g.num_vertices())
    throw Error("min_odd_cut: dimension mismatch");
  for (const Rational& v : x)
    if (v < Rational(0) || v > Rational(1)) throw Error("min_odd_cut: values outside [0,1]");
  if (b_sum(b) % 2 != 0)
    throw Error("min_odd_cut: odd total parity (instance infeasible upstream)");
  if (g.num_vertices() == 1) return std::nullopt;

  const Rational half(1, 2);
  std::vector<Rational> z(g.num_edges(), Rational(0));
  std::vector<bool> preselected(g.num_edges(), false);
  std::vector<int> parity(g.num_vertices(), 0);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) parity[i] = b[i] % 2;
  for (const Edge& e : g.edges()) {
    const auto idx = g.edge_index(e.id);
    if (e.is_loop()) continue;  // loops never cross a cut
    if (x[idx] > half) {
      preselected[idx] = true;
      z[idx] = Rational(1) - x[idx];
      parity[g.vertex_index(e.u)] ^= 1;
      parity[g.vertex_index(e.v)] ^= 1;
    } else {
      z[idx] = x[idx];
    }
  }

  const GomoryHuTree tree = gomory_hu(g, z);

  std::optional<OddCutResult> best;
  for (const auto& te : tree.edges) {
    // Fundamental bipartition: the component of the smaller-id endpoint.
    const VertexId anchor = std::min(te.u, te.v);
    std::set<VertexId> side;
    side.insert(anchor);
    std::vector<VertexId> stack = {anchor};
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const auto& oe : tree.edges) {
        if ((oe.u == te.u && oe.v == te.v) || (oe.u == te.v && oe.v == te.u)) continue;
        VertexId w = -1;
        if (oe.u == u) w = oe.v;
        else if (oe.v == u) w = oe.u;
        else continue;
        if (side.insert(w).second) stack.push_back(w);
      }
    }

    EdgeSet delta;
    int side_parity = 0;
    for (VertexId v : side) side_parity ^= parity[g.vertex_index(v)];
    Rational zval(0);
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) continue;
      if (side.count(e.u) != side.count(e.v)) {
        delta.push_back(e.id);
        zval += z[g.edge_index(e.id)];
      }
    }
    delta = normalized_edge_set(std::move(delta));

    std::optional<EdgeId> flip;
    Rational value = zval;
    if (side_parity == 0) {
      if (delta.empty()) continue;  // no odd partition exists for this set
      std::optional<Rational> best_flip;
      for (EdgeId e : delta) {
        const Rational c = Rational(1) - Rational(2) * z[g.edge_index(e)];
        if (!best_flip || c < *best_flip) {
          best_flip = c;
          flip = e;
        }
      }
      value += *best_flip;
    }
    if (best && best->value <= value) continue;

    EdgeSet f0, f1;
    for (EdgeId e : delta) {
      bool to_f1 = preselected[g.edge_index(e)];
      if (flip && *flip == e) to_f1 = !to_f1;
      (to_f1 ? f1 : f0).push_back(e);
    }
    best = finish_odd_cut(g, b, x, {side.begin(), side.end()}, std::move(f0), std::move(f1));
    TFB_CHECK(best->value == value, "odd cut candidate value mismatch");
  }
  return best;
}

std::optional<OddCutResult> min_odd_cut(const TransformedGraph& tg) {
  return min_odd_cut(tg.graph, tg.b, tg.x);
}

std::optional<OddCutResult> brute_force_min_odd_cut(const MultiGraph& g,
                                                    const std::vector<int>& b,
                                                    const std::vector<Rational>& x) {
  if (g.num_vertices() == 0) throw Error("brute_force_min_odd_cut: empty graph");
  if (g.num_vertices() > 16) throw Error("brute_force_min_odd_cut: too many vertices");
  const int n = static_cast<int>(g.num_vertices());

  std::optional<OddCutResult> best;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    long bs = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) bs += b[i];
    std::vector<const Edge*> delta;
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) continue;
      const bool iu = (mask >> g.vertex_index(e.u)) & 1;
      const bool iv = (mask >> g.vertex_index(e.v)) & 1;
      if (iu != iv) delta.push_back(&e);
    }
    std::sort(delta.begin(), delta.end(),
              [](const Edge* a, const Edge* b2) { return a->id < b2->id; });

    // Exact constrained optimum over partitions: forward DP on the number
    // of F1 edges mod 2, with predecessor tracking for the witness.
    const int m = static_cast<int>(delta.size());
    const Rational kInf(1'000'000'000L);
    std::vector<std::array<Rational, 2>> cost(m + 1, {kInf, kInf});
    std::vector<std::array<int, 2>> choice(m + 1, {-1, -1});
    cost[0][0] = Rational(0);
    for (int i = 0; i < m; ++i) {
      const Rational f0v = x[g.edge_index(delta[i]->id)];
      const Rational f1v = Rational(1) - f0v;
      for (int par = 0; par < 2; ++par) {
        if (cost[i][par] >= kInf) continue;
        if (cost[i][par] + f0v < cost[i + 1][par]) {
          cost[i + 1][par] = cost[i][par] + f0v;
          choice[i + 1][par] = 0;
        }
        if (cost[i][par] + f1v < cost[i + 1][par ^ 1]) {
          cost[i + 1][par ^ 1] = cost[i][par] + f1v;
          choice[i + 1][par ^ 1] = 1;
        }
      }
    }
    const int need = (bs % 2 == 0) ? 1 : 0;  // |F1| parity making b(S)+|F1| odd
    if (cost[m][need] >= kInf) continue;
    if (best && best->value <= cost[m][need]) continue;

    EdgeSet f0, f1;
    int par = need;
    for (int i = m; i > 0; --i) {
      const int c = choice[i][par];
      (c ? f1 : f0).push_back(delta[i - 1]->id);
      par ^= c;
    }
    std::vector<VertexId> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(g.vertices()[i]);
    best = finish_odd_cut(g, b, x, std::move(s), std::move(f0), std::move(f1));
  }
  // The full vertex set: delta empty, member exactly when b(V) is odd.
  if (b_sum(b) % 2 == 1) {
    auto whole = finish_odd_cut(g, b, x, g.vertices(), {}, {});
    if (!best || whole.value < best->value) best = whole;
  }
  return best;
}

PullBackResult pull_back_cut(const TransformedGraph& tg, const OddCutResult& cut) {
  if (cut.value >= Rational(1)) throw Error("pull_back_cut requires a cut of value below 1");

  std::set<VertexId> side(cut.s.begin(), cut.s.end());
  std::set<EdgeId> f0(cut.f0.begin(), cut.f0.end());
  std::set<EdgeId> f1(cut.f1.begin(), cut.f1.end());

  // Normalize: per triangle, put r_T on the side holding the majority of
  // the triangle's vertices; the lone crossing star edge keeps the local
  // F1 parity, so the global parity never changes and the value never
  // grows (the case arithmetic of the star replacement guarantees it).
  for (std::size_t t = 0; t < tg.triangles.size(); ++t) {
    const Triangle& tri = tg.triangles[t];
    int k = 0;
    for (VertexId v : tri.vertex_ids) k += side.count(v) ? 1 : 0;
    int local_f1 = 0;
    for (EdgeId e : tg.star[t]) {
      if (f1.count(e)) ++local_f1;
      f0.erase(e);
      f1.erase(e);
    }
    if (k >= 2) side.insert(tg.r_vertex[t]);
    else side.erase(tg.r_vertex[t]);
    if (k == 1 || k == 2) {
      int lone = -1;
      for (int i = 0; i < 3; ++i) {
        const bool in = side.count(tri.vertex_ids[i]) > 0;
        if ((k == 1 && in) || (k == 2 && !in)) lone = i;
      }
      TFB_CHECK(lone >= 0, "pull_back_cut failed to locate the lone triangle vertex");
      ((local_f1 % 2 == 1) ? f1 : f0).insert(tg.star[t][lone]);
    } else {
      TFB_CHECK(local_f1 % 2 == 0,
                "odd star assignment on a non-crossing triangle in a cut of value below 1");
    }
  }

  // Value and sanity of the normalized transformed cut.
  Rational norm_value(0);
  {
    EdgeSet delta;
    for (const Edge& e : tg.graph.edges()) {
      if (e.is_loop()) continue;
      if ((side.count(e.u) > 0) != (side.count(e.v) > 0)) delta.push_back(e.id);
    }
    delta = normalized_edge_set(std::move(delta));
    EdgeSet assigned(f0.begin(), f0.end());
    assigned.insert(assigned.end(), f1.begin(), f1.end());
    assigned = normalized_edge_set(std::move(assigned));
    TFB_CHECK(assigned == delta, "normalized assignment does not match the crossing edges");
    for (EdgeId e : f0) norm_value += tg.x[tg.graph.edge_index(e)];
    for (EdgeId e : f1) norm_value += Rational(1) - tg.x[tg.graph.edge_index(e)];
    TFB_CHECK(norm_value <= cut.value, "normalization increased the cut value");
    TFB_CHECK(norm_value < Rational(1), "normalized cut no longer violated");
  }

  // Map down to the original graph.
  PullBackResult out;
  out.value = norm_value;
  std::set<VertexId> rset(tg.r_vertex.begin(), tg.r_vertex.end());
  for (VertexId v : side)
    if (!rset.count(v)) out.cut.s.push_back(v);
  std::sort(out.cut.s.begin(), out.cut.s.end());
  for (EdgeId e : f0)
    if (edge_set_contains(tg.original_edges, e)) out.cut.f0.push_back(e);
  for (EdgeId e : f1)
    if (edge_set_contains(tg.original_edges, e)) out.cut.f1.push_back(e);

  for (std::size_t t = 0; t < tg.triangles.size(); ++t) {
    const Triangle& tri = tg.triangles[t];
    int lone = -1;
    EdgeId star_edge = -1;
    for (int i = 0; i < 3; ++i) {
      const EdgeId e = tg.star[t][i];
      if (f0.count(e) || f1.count(e)) {
        lone = i;
        star_edge = e;
      }
    }
    if (lone < 0) continue;
    // The two triangle edges incident to the lone vertex v_i: edge
    // positions i (v_i v_{i+1}) and (i+2) mod 3 (v_{i-1} v_i).
    const EdgeId a = tri.edge_ids[lone];
    const EdgeId c = tri.edge_ids[(lone + 2) % 3];
    if (f0.count(star_edge)) {
      out.cut.f0.push_back(a);
      out.cut.f0.push_back(c);
    } else {
      out.cut.f0.push_back(std::min(a, c));
      out.cut.f1.push_back(std::max(a, c));
    }
  }
  out.cut.f0 = normalized_edge_set(std::move(out.cut.f0));
  out.cut.f1 = normalized_edge_set(std::move(out.cut.f1));
  return out;
}

namespace {

SeparationOutcome base_violation(const PointViolation& v) {
  SeparationOutcome out;
  out.feasible = false;
  out.family = v.family;
  out.lhs = v.lhs;
  out.detail = v.detail;
  return out;
}

SeparationOutcome whole_set_violation(const Instance& inst) {
  SeparationOutcome out;
  out.feasible = false;
  out.family = Family::f8;
  out.cut.s = inst.graph.vertices();
  std::sort(out.cut.s.begin(), out.cut.s.end());
  out.lhs = Rational(0);
  out.detail = "odd total degree bound";
  return out;
}

const std::vector<Family> kSeparationOrder = {Family::f1, Family::f2, Family::f5,
                                              Family::f6, Family::f7, Family::f4};

}  // namespace

SeparationOutcome separate(const Instance& inst, const ExtendedPoint& point) {
  check_point_dims(inst, point);
  if (auto v = check_point(inst, point, kSeparationOrder)) return base_violation(*v);
  if (inst.b_total() % 2 == 1) return whole_set_violation(inst);

  const TransformedGraph tg = transform(inst, point);
  SeparationOutcome out;
  if (tg.graph.num_vertices() <= 1) {
    out.feasible = true;
    return out;
  }
  const auto oc = min_odd_cut(tg);
  if (!oc || oc->value >= Rational(1)) {
    out.feasible = true;
    return out;
  }
  const PullBackResult pb = pull_back_cut(tg, *oc);
  const Rational lhs = eval_cut_lhs(inst, point, pb.cut, CutVariant::strong);
  TFB_CHECK(lhs == pb.value, "pulled-back cut value disagrees with direct evaluation");
  TFB_CHECK(lhs < Rational(1), "pulled-back cut is not violated");
  out.feasible = false;
  out.family = Family::f8;
  out.cut = pb.cut;
  out.lhs = lhs;
  return out;
}

SeparationOutcome brute_force_separate(const Instance& inst, const ExtendedPoint& point) {
  check_point_dims(inst, point);
  if (inst.graph.num_vertices() > 8)
    throw Error("brute_force_separate: vertex bound exceeded");
  if (auto v = check_point(inst, point, kSeparationOrder)) return base_violation(*v);
  if (inst.b_total() % 2 == 1) return whole_set_violation(inst);

  const auto triangles = labeled_triangles(inst);
  const int n = static_cast<int>(inst.graph.num_vertices());
  std::optional<Rational> best;
  CutTriple best_cut;

  for (unsigned mask = 1; mask <= (n ? (1u << n) - 1 : 0u); ++mask) {
    long bs = 0;
    std::vector<VertexId> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        bs += inst.b[i];
        s.push_back(inst.graph.vertices()[i]);
      }
    std::sort(s.begin(), s.end());
    const EdgeSet delta = cut_delta(inst.graph, s);
    if (delta.size() > 12) throw Error("brute_force_separate: cut size bound exceeded");

    // Per-edge contributions and per-triangle correction tables.
    const int m = static_cast<int>(delta.size());
    std::vector<std::array<Rational, 2>> edge_val(m);
    std::map<EdgeId, int> pos_of;
    for (int i = 0; i < m; ++i) {
      const Rational& xv = point.x[inst.graph.edge_index(delta[i])];
      edge_val[i] = {xv, Rational(1) - xv};
      pos_of[delta[i]] = i;
    }
    struct CrossTri {
      int p1, p2;                       // positions in delta
      std::array<Rational, 4> q;        // q* by (bit1(p1 in F1) | bit2(p2 in F1))
    };
    std::vector<CrossTri> cross;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
      std::vector<int> hits;
      std::vector<int> hit_pos;
      for (int p = 0; p < 3; ++p)
        if (pos_of.count(triangles[t].edge_ids[p])) {
          hits.push_back(p);
          hit_pos.push_back(pos_of[triangles[t].edge_ids[p]]);
        }
      if (hits.empty()) continue;
      TFB_CHECK(hits.size() == 2, "triangle crosses a vertex cut in other than 0 or 2 edges");
      const int m1 = 1 << hits[0], m2 = 1 << hits[1];
      const int other = 7 ^ (m1 | m2);
      const auto& y = point.y[t];
      CrossTri ct;
      ct.p1 = hit_pos[0];
      ct.p2 = hit_pos[1];
      ct.q[0b00] = y[m1 | m2];
      ct.q[0b01] = y[m1] + y[m1 | other];  // p2 in F1, p1 in F0
      ct.q[0b10] = y[m2] + y[m2 | other];  // p1 in F1, p2 in F0
      ct.q[0b11] = y[0] + y[other];
      cross.push_back(ct);
    }

    const int need = (bs % 2 == 0) ? 1 : 0;
    for (unsigned f1m = 0; f1m < (1u << m); ++f1m) {
      if ((__builtin_popcount(f1m) & 1) != need) continue;
      Rational value(0);
      for (int i = 0; i < m; ++i) value += edge_val[i][(f1m >> i) & 1];
      for (const CrossTri& ct : cross) {
        const int pat = (((f1m >> ct.p1) & 1) ? 0b10 : 0) | (((f1m >> ct.p2) & 1) ? 0b01 : 0);
        value -= Rational(2) * ct.q[pat];
      }
      if (best && *best <= value) continue;
      best = value;
      best_cut.s = s;
      best_cut.f0.clear();
      best_cut.f1.clear();
      for (int i = 0; i < m; ++i) ((f1m >> i) & 1 ? best_cut.f1 : best_cut.f0).push_back(delta[i]);
      best_cut.f0 = normalized_edge_set(std::move(best_cut.f0));
      best_cut.f1 = normalized_edge_set(std::move(best_cut.f1));
    }
  }

  SeparationOutcome out;
  if (!best || *best >= Rational(1)) {
    out.feasible = true;
    return out;
  }
  out.feasible = false;
  out.family = Family::f8;
  out.cut = best_cut;
  out.lhs = *best;
  return out;
}

}  // namespace tfb
