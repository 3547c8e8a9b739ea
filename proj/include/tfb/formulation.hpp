#ifndef TFB_FORMULATION_HPP
#define TFB_FORMULATION_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tfb/graph.hpp"
#include "tfb/lp.hpp"

namespace tfb {

/// y variables are indexed per triangle by a subset mask over the labeled
/// edges (bit0 = alpha, bit1 = beta, bit2 = gamma); masks 0..6 are the
/// seven proper subsets of E(T), mask 7 (the full triangle) is excluded.
inline constexpr int kNumYSubsets = 7;

struct ExtendedPoint {
  std::vector<Rational> x;                        // by edge index
  std::vector<std::array<Rational, kNumYSubsets>> y;  // by triangle index, subset mask
};

/// A triple (S, F0, F1): vertex set plus a partition of delta(S). Member of
/// the odd family when b(S) + |F1| is odd.
struct CutTriple {
  std::vector<VertexId> s;  // sorted
  EdgeSet f0, f1;

  bool operator==(const CutTriple&) const = default;
  bool operator<(const CutTriple& o) const {
    if (s != o.s) return s < o.s;
    if (f0 != o.f0) return f0 < o.f0;
    return f1 < o.f1;
  }
};

enum class Family { f1, f2, f4, f5, f6, f7, f8 };
std::string family_label(Family f);

struct PointViolation {
  Family family;
  std::string detail;
  Rational lhs;
};

struct BaseModel {
  lp::LpModel model;
  std::vector<int> x_var;                          // by edge index
  std::vector<std::array<int, kNumYSubsets>> y_var;  // by triangle index, mask
};

/// Degree rows, the per-triangle y system, and the (retained, redundant)
/// triangle cap rows; objective max sum w(e) x(e). No odd-cut rows yet.
BaseModel build_base_model(const Instance& inst);

/// Produces y on one triangle's seven subsets from x on its edges.
/// Pre: each x in [0,1] and x(E(T)) <= 2. Result satisfies the y system.
std::array<Rational, kNumYSubsets> lift_y(const std::array<Rational, 3>& x);

enum class CutVariant { strong, relaxed };

/// Per-triangle correction term of the strengthened odd-cut inequality.
/// Pre: exactly two edges of t cross the cut.
Rational eval_qstar(const Triangle& t, const CutTriple& cut,
                    const std::array<Rational, kNumYSubsets>& y);
/// Relaxed correction term (test apparatus for the weaker inequality family).
Rational eval_q(const Triangle& t, const CutTriple& cut,
                const std::array<Rational, kNumYSubsets>& y);

/// sum_{F0} x(e) + sum_{F1} (1 - x(e)) - sum_{T crossing} 2 q(*)(T).
/// Throws unless (F0, F1) partitions delta(S) and b(S) + |F1| is odd.
Rational eval_cut_lhs(const Instance& inst, const ExtendedPoint& point, const CutTriple& cut,
                      CutVariant variant);

/// The integral witness point of a T-free b-factor: x its characteristic
/// vector and y(T, J) = 1 exactly when M ∩ E(T) = J.
ExtendedPoint canonical_y(const Instance& inst, const EdgeSet& m);

/// Exact constraint evaluation in the given family order; first violation
/// wins, scanning vertices/edges/triangles in fixed id order inside each
/// family. Families here exclude the odd-cut family.
std::optional<PointViolation> check_point(const Instance& inst, const ExtendedPoint& point,
                                          const std::vector<Family>& families);
std::optional<PointViolation> check_point(const Instance& inst, const ExtendedPoint& point);

/// LP row stating the strengthened odd-cut inequality for this cut.
lp::Row make_cut_row(const Instance& inst, const BaseModel& base, const CutTriple& cut);

/// Edges of delta(S) in id order; self-loops never cross.
EdgeSet cut_delta(const MultiGraph& g, const std::vector<VertexId>& s_sorted);

/// Partition and parity check for family membership.
bool cut_in_family(const Instance& inst, const CutTriple& cut);

/// Dimension check for points against an instance.
void check_point_dims(const Instance& inst, const ExtendedPoint& point);

}  // namespace tfb

#endif  // TFB_FORMULATION_HPP
