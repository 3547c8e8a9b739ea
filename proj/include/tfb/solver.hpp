#ifndef TFB_SOLVER_HPP
#define TFB_SOLVER_HPP

#include <vector>

#include "tfb/formulation.hpp"
#include "tfb/graph.hpp"
#include "tfb/separation.hpp"

namespace tfb {

struct SolveOptions {
  long max_cuts = 10000;  // hard error beyond this; surfaces separation bugs
  // Skip the shortcut taken when the relaxation optimum is already
  // integral and always run the edge-fixing loop (mainly for tests).
  bool force_fixing_extraction = false;
};

enum class SolveStatus { optimal, infeasible };

struct RelaxationResult {
  SolveStatus status = SolveStatus::optimal;
  Rational value;
  ExtendedPoint point;
  std::vector<CutTriple> cuts;
  std::vector<Rational> value_trace;  // LP value after each solve (non-increasing)
  long iterations = 0;                // LP solves
  long lp_pivots = 0;
  std::vector<Rational> farkas;  // infeasibility certificate for final_model
  lp::LpModel final_model;       // the model the last LP solve ran on
};

/// Cutting-plane loop over the extended formulation: solve, separate, add
/// the violated odd-cut row, repeat until the point is feasible or the LP
/// turns infeasible. Exact optimum over the extended polytope.
RelaxationResult solve_relaxation(const Instance& inst, const SolveOptions& opts = {});

/// Recovers an integral optimum of value w_star by fixing edge variables
/// one at a time (in id order) and re-running the cutting-plane solve.
/// Pre: solve_relaxation returned optimal with value w_star.
EdgeSet extract_integral(const Instance& inst, const Rational& w_star,
                         const SolveOptions& opts = {});

struct SolveReport {
  SolveStatus status = SolveStatus::optimal;
  Rational optimum;
  EdgeSet factor;
  std::vector<CutTriple> cuts;
  long iterations = 0;
  long lp_pivots = 0;
  std::vector<Rational> farkas;  // infeasible only
  lp::LpModel final_model;       // infeasible only: model the certificate refers to
};

/// Full solve for either mode; matching mode goes through the dummy-vertex
/// reduction and maps the witness back.
SolveReport solve(const Instance& inst, const SolveOptions& opts = {});

}  // namespace tfb

#endif  // TFB_SOLVER_HPP
