#ifndef TFB_SEPARATION_HPP
#define TFB_SEPARATION_HPP

#include <optional>
#include <vector>

#include "tfb/formulation.hpp"
#include "tfb/graph.hpp"

namespace tfb {

/// Triangle-replacement graph: every forbidden triangle's edges are removed
/// and replaced by a star vertex r_T with edges e_i = r_T v_i carrying the
/// transformed values; surviving original edges keep their value.
struct TransformedGraph {
  MultiGraph graph;
  std::vector<int> b;            // by vertex index; 0 on the star vertices
  std::vector<Rational> x;       // by edge index, always in [0,1]
  std::vector<Triangle> triangles;             // labeled original triangles
  std::vector<VertexId> r_vertex;              // per triangle
  std::vector<std::array<EdgeId, 3>> star;     // per triangle: e_i = r_T v_i
  EdgeSet original_edges;                      // surviving original edge ids
};

/// Pre: point satisfies the box and the per-triangle y system (checked).
TransformedGraph transform(const Instance& inst, const ExtendedPoint& point);

struct MaxFlowResult {
  Rational value;
  std::vector<VertexId> source_side;  // a minimum cut, sorted
};

/// Exact undirected max flow (shortest augmenting paths). Deterministic.
MaxFlowResult max_flow(const MultiGraph& g, const std::vector<Rational>& cap_by_edge_index,
                       VertexId s, VertexId t);

struct GomoryHuTree {
  struct TreeEdge {
    VertexId u, v;
    Rational capacity;
  };
  std::vector<VertexId> nodes;
  std::vector<TreeEdge> edges;  // |nodes| - 1 edges; capacity 0 across components
};

/// Gomory-Hu cut tree by the contraction scheme: every tree edge's
/// capacity is the exact minimum cut between its endpoints, and the
/// fundamental bipartition attains it. In particular the tree is
/// flow-equivalent: all pairwise min cut values are path minima.
GomoryHuTree gomory_hu(const MultiGraph& g, const std::vector<Rational>& cap_by_edge_index);

/// Minimum capacity over the s-t path in the tree.
Rational tree_path_min(const GomoryHuTree& tree, VertexId s, VertexId t);

struct OddCutResult {
  Rational value;              // sum_{F0} x + sum_{F1} (1-x)
  std::vector<VertexId> s;     // sorted, proper nonempty
  EdgeSet f0, f1;              // partition of delta(s)
};

/// Exact minimum of sum_{F0} x(e) + sum_{F1} (1-x(e)) over proper nonempty
/// S and partitions of delta(S) with b(S) + |F1| odd. Route: preselect
/// edges with x > 1/2, derive vertex parities, scan the Gomory-Hu
/// fundamental cuts with a cheapest single-edge parity repair. nullopt when
/// no member of the family exists. Pre: sum(b) even; x in [0,1].
std::optional<OddCutResult> min_odd_cut(const MultiGraph& g, const std::vector<int>& b,
                                        const std::vector<Rational>& x_by_edge_index);
std::optional<OddCutResult> min_odd_cut(const TransformedGraph& tg);

/// Independent oracle: all 2^|V| vertex sets, per-set exact optimum over
/// partitions by an even/odd-parity dynamic program (cross-checked against
/// literal partition enumeration in the tests).
std::optional<OddCutResult> brute_force_min_odd_cut(const MultiGraph& g,
                                                    const std::vector<int>& b,
                                                    const std::vector<Rational>& x_by_edge_index);

struct PullBackResult {
  CutTriple cut;
  Rational value;  // normalized cut value; equals eval_cut_lhs(strong) on cut
};

/// Maps a violated odd cut of the transformed graph back to a member of the
/// original family with the same (after normalization: no larger) value.
/// Pre: cut.value < 1.
PullBackResult pull_back_cut(const TransformedGraph& tg, const OddCutResult& cut);

struct SeparationOutcome {
  bool feasible = false;
  Family family = Family::f8;  // when violated
  CutTriple cut;               // odd-family certificate; empty for base families
  Rational lhs;
  std::string detail;          // offending ids for base-family violations
};

/// Full separation: the static families in fixed order, then the odd-cut
/// family via the transformed graph.
SeparationOutcome separate(const Instance& inst, const ExtendedPoint& point);

/// Ground truth: exhaustive minimum of the strengthened odd-cut left side
/// over every vertex set and partition. Guarded to |V| <= 8, |delta| <= 12.
SeparationOutcome brute_force_separate(const Instance& inst, const ExtendedPoint& point);

}  // namespace tfb

#endif  // TFB_SEPARATION_HPP
