#ifndef TFB_SAMPLING_HPP
#define TFB_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "tfb/formulation.hpp"
#include "tfb/graph.hpp"

namespace tfb {

/// Canonical fixtures used by the CLI generator and the test corpora.

/// Triangle graph on {1,2,3}, b = 2, unit weights; optionally forbids the
/// triangle itself.
Instance k3_instance(bool forbid_triangle, Mode mode = Mode::factor);

/// Complete graph on four vertices, b = 2, unit weights, one forbidden
/// triangle on {1,2,3}.
Instance k4_instance();

/// Two triangles joined by three rungs, b = 2, both triangles forbidden;
/// triangle edges weigh 2, rungs 0.
Instance prism_instance();

/// Two vertices with b = 1 carrying one self-loop each; no triangles.
Instance selfloop_pair_instance();

/// A forbidden triangle whose three corners each carry a private
/// two-vertex cluster (a parallel pair plus a helper loop). Exactly two
/// b-factors exist and only the triangle-free one survives, so the
/// midpoint of the two lies in the b-factor polytope but outside the
/// T-free hull.
Instance adversarial_instance();

/// A witness for the adversarial instance: x = 1/2 everywhere, y chosen so
/// the pair subset {alpha,beta} carries 1/3.
ExtendedPoint adversarial_point(const Instance& inst);

struct RandomInstanceParams {
  int min_vertices = 2;
  int max_vertices = 6;
  int min_edges = 1;
  int max_edges = 12;
  int max_triangles = 3;
  int max_b = 3;
  Mode mode = Mode::factor;
};

/// Deterministic seeded generator: random multigraph (loops and parallels
/// allowed), b values in [0, max_b], weights p/q with p in [-4, 8] and
/// q in [1, 4], and a random edge-disjoint subset of the graph's triangles.
Instance random_instance(std::uint64_t seed, const RandomInstanceParams& params = {});

/// Extended points satisfying the full static system exactly: vertices of
/// the base polytope under seeded random objectives, plus midpoint blends
/// of consecutive vertices. Empty when the base polytope is empty.
std::vector<ExtendedPoint> sample_extended_points(const Instance& inst, int count,
                                                  std::uint64_t seed);

}  // namespace tfb

#endif  // TFB_SAMPLING_HPP
