#include "tfb/solver.hpp"

#include <algorithm>
#include <set>

namespace tfb {

namespace {

// Base model plus accumulated odd-cut rows; supports bound fixing for the
// extraction phase. Cuts stay valid across bound changes since they hold
// for every integral factor.
class CuttingPlaneEngine {
 public:
  CuttingPlaneEngine(const Instance& inst, const SolveOptions& opts)
      : inst_(inst), opts_(opts), base_(build_base_model(inst)) {}

  struct LoopResult {
    lp::Status status;
    Rational value;
    ExtendedPoint point;
  };

  // Runs LP + separation to optimality over the extended polytope (under
  // the current variable bounds), or to a certified infeasibility.
  LoopResult run() {
    for (;;) {
      const lp::LpResult res = lp::solve(base_.model);
      ++iterations_;
      pivots_ += res.pivots;
      if (res.status == lp::Status::infeasible) {
        farkas_ = res.farkas;
        return {lp::Status::infeasible, Rational(0), {}};
      }
      TFB_CHECK(res.status == lp::Status::optimal, "relaxation LP cannot be unbounded");
      value_trace_.push_back(res.value);
      ExtendedPoint p = point_from(res);
      const SeparationOutcome sep = separate(inst_, p);
      if (sep.feasible) return {lp::Status::optimal, res.value, std::move(p)};
      TFB_CHECK(sep.family == Family::f8,
                "LP point violates static family " + family_label(sep.family) +
                    " (base rows must enforce it)");
      add_cut(sep.cut);
    }
  }

  void add_cut(const CutTriple& cut) {
    TFB_CHECK(seen_.insert(cut).second, "duplicate cut generated (separation bug)");
    if (static_cast<long>(cuts_.size()) >= opts_.max_cuts)
      throw Error("cut limit exceeded (" + std::to_string(opts_.max_cuts) + ")");
    cuts_.push_back(cut);
    base_.model.add_row(make_cut_row(inst_, base_, cut));
  }

  void fix_edge(std::size_t edge_index, int value) {
    base_.model.set_variable_bounds(base_.x_var[edge_index], Rational(value), Rational(value));
  }

  const std::vector<CutTriple>& cuts() const { return cuts_; }
  const std::vector<Rational>& value_trace() const { return value_trace_; }
  long iterations() const { return iterations_; }
  long pivots() const { return pivots_; }
  const std::vector<Rational>& farkas() const { return farkas_; }
  const lp::LpModel& model() const { return base_.model; }

 private:
  ExtendedPoint point_from(const lp::LpResult& res) const {
    ExtendedPoint p;
    p.x.reserve(base_.x_var.size());
    for (int var : base_.x_var) p.x.push_back(res.point[var]);
    p.y.resize(base_.y_var.size());
    for (std::size_t t = 0; t < base_.y_var.size(); ++t)
      for (int j = 0; j < kNumYSubsets; ++j) p.y[t][j] = res.point[base_.y_var[t][j]];
    return p;
  }

  const Instance& inst_;
  SolveOptions opts_;
  BaseModel base_;
  std::vector<CutTriple> cuts_;
  std::set<CutTriple> seen_;
  std::vector<Rational> value_trace_;
  std::vector<Rational> farkas_;
  long iterations_ = 0;
  long pivots_ = 0;
};

CutTriple whole_vertex_set_cut(const Instance& inst) {
  CutTriple cut;
  cut.s = inst.graph.vertices();
  std::sort(cut.s.begin(), cut.s.end());
  return cut;
}

RelaxationResult relaxation_with(CuttingPlaneEngine& engine, const Instance& inst) {
  RelaxationResult out;
  if (inst.b_total() % 2 == 1) {
    // Handshake parity: no b-factor can exist. The whole-vertex-set member
    // of the odd family reads 0 >= 1; one LP solve certifies it.
    engine.add_cut(whole_vertex_set_cut(inst));
    const auto r = engine.run();
    TFB_CHECK(r.status == lp::Status::infeasible, "odd-parity instance with feasible LP");
  } else {
    const auto r = engine.run();
    if (r.status == lp::Status::optimal) {
      out.status = SolveStatus::optimal;
      out.value = r.value;
      out.point = r.point;
    }
  }
  out.cuts = engine.cuts();
  out.value_trace = engine.value_trace();
  out.iterations = engine.iterations();
  out.lp_pivots = engine.pivots();
  out.final_model = engine.model();
  if (!engine.farkas().empty()) {
    out.status = SolveStatus::infeasible;
    out.farkas = engine.farkas();
    TFB_CHECK(lp::farkas_proves_infeasible(out.final_model, out.farkas),
              "relaxation infeasibility certificate failed verification");
  }
  return out;
}

Rational weight_of_set(const Instance& inst, const EdgeSet& m) {
  Rational w(0);
  for (EdgeId e : m) w += inst.weight_of(e);
  return w;
}

bool all_integral(const std::vector<Rational>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const Rational& v) { return v.is_integer(); });
}

EdgeSet extract_with(CuttingPlaneEngine& engine, const Instance& inst, const Rational& w_star,
                     const ExtendedPoint& relaxation_point, bool force_fixing) {
  // The relaxation optimum often lands on an integral vertex already; that
  // point is then itself an optimal factor and the fixing loop is skipped.
  if (!force_fixing && all_integral(relaxation_point.x)) {
    EdgeSet m;
    for (std::size_t i = 0; i < relaxation_point.x.size(); ++i)
      if (relaxation_point.x[i] == Rational(1)) m.push_back(inst.graph.edges()[i].id);
    m = normalized_edge_set(std::move(m));
    TFB_CHECK(is_tfree_bfactor(inst, m), "integral relaxation point is not a T-free b-factor");
    TFB_CHECK(weight_of_set(inst, m) == w_star, "integral relaxation point misses the optimum");
    return m;
  }

  std::vector<EdgeId> order;
  for (const Edge& e : inst.graph.edges()) order.push_back(e.id);
  std::sort(order.begin(), order.end());

  EdgeSet m;
  for (EdgeId e : order) {
    const std::size_t idx = inst.graph.edge_index(e);
    engine.fix_edge(idx, 1);
    const auto at_one = engine.run();
    if (at_one.status == lp::Status::optimal && at_one.value == w_star) {
      m.push_back(e);
      continue;
    }
    engine.fix_edge(idx, 0);
    const auto at_zero = engine.run();
    TFB_CHECK(at_zero.status == lp::Status::optimal && at_zero.value == w_star,
              "extraction lost the optimum after fixing edge " + std::to_string(e));
  }
  m = normalized_edge_set(std::move(m));
  TFB_CHECK(is_tfree_bfactor(inst, m), "extracted edge set is not a T-free b-factor");
  TFB_CHECK(weight_of_set(inst, m) == w_star, "extracted factor misses the optimum");
  return m;
}

}  // namespace

RelaxationResult solve_relaxation(const Instance& inst, const SolveOptions& opts) {
  CuttingPlaneEngine engine(inst, opts);
  return relaxation_with(engine, inst);
}

EdgeSet extract_integral(const Instance& inst, const Rational& w_star, const SolveOptions& opts) {
  CuttingPlaneEngine engine(inst, opts);
  RelaxationResult relax = relaxation_with(engine, inst);
  if (relax.status != SolveStatus::optimal)
    throw Error("extract_integral requires a feasible relaxation");
  TFB_CHECK(relax.value == w_star, "extract_integral called with a non-optimal target value");
  return extract_with(engine, inst, w_star, relax.point, opts.force_fixing_extraction);
}

SolveReport solve(const Instance& inst, const SolveOptions& opts) {
  {
    const auto violations = validate_instance(inst);
    if (!violations.empty()) throw Error("invalid instance: " + violations.front());
  }

  if (inst.mode == Mode::matching) {
    const MatchingReduction red = reduce_matching_to_factor(inst);
    SolveReport inner = solve(red.factor_instance, opts);
    TFB_CHECK(inner.status == SolveStatus::optimal,
              "matching-mode reduction produced an infeasible factor instance");
    inner.factor = red.restrict(inner.factor);
    TFB_CHECK(weight_of_set(inst, inner.factor) == inner.optimum,
              "matching witness weight disagrees with the factor optimum");
    return inner;
  }

  CuttingPlaneEngine engine(inst, opts);
  RelaxationResult relax = relaxation_with(engine, inst);
  SolveReport report;
  report.iterations = relax.iterations;
  report.lp_pivots = relax.lp_pivots;
  if (relax.status == SolveStatus::infeasible) {
    report.status = SolveStatus::infeasible;
    report.cuts = relax.cuts;
    report.farkas = relax.farkas;
    report.final_model = relax.final_model;
    return report;
  }
  report.status = SolveStatus::optimal;
  report.optimum = relax.value;
  report.factor =
      extract_with(engine, inst, relax.value, relax.point, opts.force_fixing_extraction);
  report.cuts = engine.cuts();
  report.iterations = engine.iterations();
  report.lp_pivots = engine.pivots();
  return report;
}

}  // namespace tfb
