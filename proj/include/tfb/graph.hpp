#ifndef TFB_GRAPH_HPP
#define TFB_GRAPH_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfb/rational.hpp"

namespace tfb {

using VertexId = int;
using EdgeId = int;

struct Edge {
  EdgeId id;
  VertexId u, v;
  bool is_loop() const { return u == v; }
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

/// Undirected multigraph: parallel edges and self-loops are permitted.
/// Vertex and edge ids are arbitrary ints; internally everything is
/// addressed by dense indices in insertion order.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(std::vector<VertexId> vertices, std::vector<Edge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_vertex(VertexId v) const { return vertex_index_.count(v) > 0; }
  bool has_edge(EdgeId e) const { return edge_index_.count(e) > 0; }
  int vertex_index(VertexId v) const;
  int edge_index(EdgeId e) const;
  const Edge& edge(EdgeId e) const { return edges_[edge_index(e)]; }

  /// Edge ids incident to v, in id order. A self-loop appears once here;
  /// degree-style accounting must count it twice.
  const std::vector<EdgeId>& incident(VertexId v) const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, int> vertex_index_;
  std::map<EdgeId, int> edge_index_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// A forbidden triangle: three edges forming a 3-cycle on three distinct
/// vertices, labeled so that alpha = v1v2, beta = v2v3, gamma = v3v1.
struct Triangle {
  std::array<EdgeId, 3> edge_ids;    // (alpha, beta, gamma)
  std::array<VertexId, 3> vertex_ids;  // (v1, v2, v3)

  EdgeId alpha() const { return edge_ids[0]; }
  EdgeId beta() const { return edge_ids[1]; }
  EdgeId gamma() const { return edge_ids[2]; }
  bool has_edge(EdgeId e) const {
    return e == edge_ids[0] || e == edge_ids[1] || e == edge_ids[2];
  }
};

/// Edge sets are kept sorted and duplicate-free; all tie-breaks in the
/// library are lexicographic on these.
using EdgeSet = std::vector<EdgeId>;

EdgeSet normalized_edge_set(EdgeSet s);
bool edge_set_contains(const EdgeSet& s, EdgeId e);

enum class Mode { factor, matching };

struct Instance {
  MultiGraph graph;
  std::vector<int> b;                              // by vertex index
  std::vector<std::array<EdgeId, 3>> triangles;    // raw edge triples as given
  std::vector<Rational> weights;                   // by edge index
  Mode mode = Mode::factor;

  int b_of(VertexId v) const { return b[graph.vertex_index(v)]; }
  const Rational& weight_of(EdgeId e) const { return weights[graph.edge_index(e)]; }
  long b_total() const;
};

/// Checks every Instance invariant; returns one message per violation
/// (empty result means the instance is valid).
std::vector<std::string> validate_instance(const Instance& inst);

inline bool is_valid(const Instance& inst) { return validate_instance(inst).empty(); }

/// Derives the (v1,v2,v3) labeling for every listed triangle.
/// Pre: validate_instance passed.
std::vector<Triangle> labeled_triangles(const Instance& inst);

/// Attempts to interpret three edges as a triangle; nullopt if they do not
/// form a 3-cycle on three distinct vertices.
std::optional<Triangle> make_triangle(const MultiGraph& g, const std::array<EdgeId, 3>& eids);

/// True iff every vertex v has |M ∩ incident(v)| = b(v) with self-loops
/// counted twice, and no forbidden triangle lies entirely inside M.
bool is_tfree_bfactor(const Instance& inst, const EdgeSet& m);

/// True iff every vertex degree is at most b(v) (loops twice) and M avoids
/// every forbidden triangle; the matching-mode feasibility predicate.
bool is_tfree_bmatching(const Instance& inst, const EdgeSet& m);

struct MatchingReduction {
  Instance factor_instance;
  VertexId dummy_vertex;
  EdgeSet original_edges;

  /// Restricts a factor of the reduced instance to the original edges.
  EdgeSet restrict(const EdgeSet& m) const;
};

/// Reduction from matching mode to factor mode: one dummy
/// vertex D with b(D) = sum of all b(v), b(v) parallel zero-weight edges
/// v–D per original vertex, and floor(b(D)/2) zero-weight loops at D.
MatchingReduction reduce_matching_to_factor(const Instance& inst);

struct EnumOptions {
  int max_edges = 24;
  long cap = 2'000'000;
};

/// All T-free b-factors, in lexicographic edge-id order, by DFS over edges
/// with residual degree-feasibility pruning. Desk-scale oracle only.
std::vector<EdgeSet> enumerate_tfree_bfactors(const Instance& inst,
                                              const EnumOptions& opts = {});

enum class OracleStatus { optimal, infeasible };

struct BruteForceResult {
  OracleStatus status;
  Rational weight;
  EdgeSet witness;  // lexicographically least optimal set
};

/// Ground-truth optimum by exhaustive search. Factor mode optimizes over
/// T-free b-factors, matching mode over T-free b-matchings.
BruteForceResult brute_force_optimum(const Instance& inst, const EnumOptions& opts = {});

struct HullResult {
  bool inside;
  /// When outside: Farkas multipliers for the convex-combination LP, one
  /// per row (rows: one per edge in id order, then the convexity row).
  std::vector<Rational> certificate;
};

/// Decides membership of x in conv{characteristic vectors of T-free
/// b-factors} by exact LP feasibility over the enumerated factors.
HullResult hull_membership(const Instance& inst, const std::vector<Rational>& x_by_edge_index,
                           const EnumOptions& opts = {});

}  // namespace tfb

#endif  // TFB_GRAPH_HPP
