#include "tfb/formulation.hpp"

#include <algorithm>
#include <map>

namespace tfb {

std::string family_label(Family f) {
  switch (f) {
    case Family::f1: return "(1)";
    case Family::f2: return "(2)";
    case Family::f4: return "(4)";
    case Family::f5: return "(5)";
    case Family::f6: return "(6)";
    case Family::f7: return "(7)";
    case Family::f8: return "(8)";
  }
  return "?";
}

void check_point_dims(const Instance& inst, const ExtendedPoint& point) {
  if (point.x.size() != inst.graph.num_edges())
    throw Error("point x has dimension " + std::to_string(point.x.size()) + ", instance has " +
                std::to_string(inst.graph.num_edges()) + " edges");
  if (point.y.size() != inst.triangles.size())
    throw Error("point y has entries for " + std::to_string(point.y.size()) +
                " triangles, instance has " + std::to_string(inst.triangles.size()));
}

BaseModel build_base_model(const Instance& inst) {
  if (inst.mode != Mode::factor) throw Error("build_base_model requires a factor-mode instance");
  {
    const auto violations = validate_instance(inst);
    if (!violations.empty()) throw Error("invalid instance: " + violations.front());
  }
  const auto triangles = labeled_triangles(inst);

  BaseModel base;
  base.x_var.reserve(inst.graph.num_edges());
  for (std::size_t e = 0; e < inst.graph.num_edges(); ++e)
    base.x_var.push_back(base.model.add_variable(Rational(0), Rational(1)));
  base.y_var.resize(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int mask = 0; mask < kNumYSubsets; ++mask)
      base.y_var[t][mask] = base.model.add_variable(Rational(0), std::nullopt);

  // Degree rows: x(deltadot(v)) = b(v), self-loops with coefficient 2.
  for (std::size_t vi = 0; vi < inst.graph.num_vertices(); ++vi) {
    std::map<int, Rational> coeff;
    for (const Edge& e : inst.graph.edges()) {
      const int xv = base.x_var[inst.graph.edge_index(e.id)];
      if (static_cast<std::size_t>(inst.graph.vertex_index(e.u)) == vi) coeff[xv] += 1;
      if (static_cast<std::size_t>(inst.graph.vertex_index(e.v)) == vi) coeff[xv] += 1;
    }
    lp::Row row;
    for (const auto& [var, c] : coeff) row.terms.push_back({var, c});
    row.rel = lp::Rel::eq;
    row.rhs = Rational(inst.b[vi]);
    base.model.add_row(std::move(row));
  }

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    // Convexity row over the seven subsets.
    {
      lp::Row row;
      for (int mask = 0; mask < kNumYSubsets; ++mask)
        row.terms.push_back({base.y_var[t][mask], Rational(1)});
      row.rel = lp::Rel::eq;
      row.rhs = Rational(1);
      base.model.add_row(std::move(row));
    }
    // Linking rows: sum of y over subsets containing the edge equals x(e).
    for (int pos = 0; pos < 3; ++pos) {
      lp::Row row;
      for (int mask = 0; mask < kNumYSubsets; ++mask)
        if (mask & (1 << pos)) row.terms.push_back({base.y_var[t][mask], Rational(1)});
      row.terms.push_back(
          {base.x_var[inst.graph.edge_index(triangles[t].edge_ids[pos])], Rational(-1)});
      row.rel = lp::Rel::eq;
      row.rhs = Rational(0);
      base.model.add_row(std::move(row));
    }
    // Triangle cap x(E(T)) <= 2. Redundant given the y system; retained.
    {
      lp::Row row;
      for (int pos = 0; pos < 3; ++pos)
        row.terms.push_back(
            {base.x_var[inst.graph.edge_index(triangles[t].edge_ids[pos])], Rational(1)});
      row.rel = lp::Rel::le;
      row.rhs = Rational(2);
      base.model.add_row(std::move(row));
    }
  }

  std::vector<lp::Term> obj;
  for (std::size_t e = 0; e < inst.graph.num_edges(); ++e)
    obj.push_back({base.x_var[e], inst.weights[e]});
  base.model.set_objective(lp::Sense::maximize, std::move(obj));
  return base;
}

std::array<Rational, kNumYSubsets> lift_y(const std::array<Rational, 3>& x) {
  Rational total(0);
  for (const Rational& v : x) {
    if (v < Rational(0) || v > Rational(1)) throw Error("lift_y: x outside [0,1]");
    total += v;
  }
  if (total > Rational(2)) throw Error("lift_y: x(E(T)) exceeds 2");

  // Relabel so the role order has descending x (stable on ties).
  std::array<int, 3> p = {0, 1, 2};
  std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return x[a] > x[b]; });
  const Rational &xa = x[p[0]], &xb = x[p[1]], &xc = x[p[2]];
  const int A = 1 << p[0], B = 1 << p[1], C = 1 << p[2];

  std::array<Rational, kNumYSubsets> y;
  y.fill(Rational(0));
  const Rational half(1, 2);
  if (xa >= xb + xc) {
    y[A | B] = xb;
    y[A | C] = xc;
    y[0] = Rational(1) - xa;
    y[A] = xa - xb - xc;
  } else {
    y[A | B] = half * (xa + xb - xc);
    y[A | C] = half * (xa + xc - xb);
    y[B | C] = half * (xb + xc - xa);
    y[0] = Rational(1) - half * (xa + xb + xc);
  }
  return y;
}

EdgeSet cut_delta(const MultiGraph& g, const std::vector<VertexId>& s_sorted) {
  EdgeSet delta;
  for (const Edge& e : g.edges()) {
    const bool iu = std::binary_search(s_sorted.begin(), s_sorted.end(), e.u);
    const bool iv = std::binary_search(s_sorted.begin(), s_sorted.end(), e.v);
    if (iu != iv) delta.push_back(e.id);
  }
  return normalized_edge_set(std::move(delta));
}

bool cut_in_family(const Instance& inst, const CutTriple& cut) {
  const EdgeSet delta = cut_delta(inst.graph, cut.s);
  EdgeSet both = cut.f0;
  both.insert(both.end(), cut.f1.begin(), cut.f1.end());
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end()) return false;
  if (both != delta) return false;
  long bs = 0;
  for (VertexId v : cut.s) bs += inst.b_of(v);
  return (bs + static_cast<long>(cut.f1.size())) % 2 == 1;
}

namespace {

struct Crossing {
  int f0_pos = -1;    // role position (0..2) of the crossing edge in F0
  int f1_pos = -1;    // role position of the crossing edge in F1
  int other_pos = -1; // role position of the non-crossing edge
  int cross_a = -1, cross_b = -1;  // the two crossing role positions
};

Crossing classify_crossing(const Triangle& t, const CutTriple& cut) {
  std::array<bool, 3> in_s;
  for (int i = 0; i < 3; ++i)
    in_s[i] = std::binary_search(cut.s.begin(), cut.s.end(), t.vertex_ids[i]);
  // alpha = v1v2, beta = v2v3, gamma = v3v1
  const std::array<std::pair<int, int>, 3> ends = {{{0, 1}, {1, 2}, {2, 0}}};
  Crossing c;
  int count = 0;
  for (int pos = 0; pos < 3; ++pos) {
    if (in_s[ends[pos].first] != in_s[ends[pos].second]) {
      (count == 0 ? c.cross_a : c.cross_b) = pos;
      ++count;
    } else {
      c.other_pos = pos;
    }
  }
  if (count != 2)
    throw Error("triangle does not cross the cut in exactly two edges (crossing count " +
                std::to_string(count) + ")");
  for (int pos : {c.cross_a, c.cross_b}) {
    const EdgeId e = t.edge_ids[pos];
    const bool in0 = edge_set_contains(cut.f0, e);
    const bool in1 = edge_set_contains(cut.f1, e);
    if (in0 == in1) throw Error("crossing edge " + std::to_string(e) + " not assigned to exactly one of F0/F1");
    (in0 ? c.f0_pos : c.f1_pos) = pos;
  }
  return c;
}

}  // namespace

Rational eval_qstar(const Triangle& t, const CutTriple& cut,
                    const std::array<Rational, kNumYSubsets>& y) {
  const Crossing c = classify_crossing(t, cut);
  if (c.f0_pos >= 0 && c.f1_pos >= 0)
    return y[1 << c.f0_pos] + y[(1 << c.f0_pos) | (1 << c.other_pos)];
  if (c.f1_pos < 0)  // both crossing edges in F0
    return y[(1 << c.cross_a) | (1 << c.cross_b)];
  // both crossing edges in F1
  return y[0] + y[1 << c.other_pos];
}

Rational eval_q(const Triangle& t, const CutTriple& cut,
                const std::array<Rational, kNumYSubsets>& y) {
  const Crossing c = classify_crossing(t, cut);
  if (c.f0_pos >= 0 && c.f1_pos >= 0)
    return y[1 << c.f0_pos] + y[(1 << c.f0_pos) | (1 << c.other_pos)];
  if (c.f1_pos < 0) return Rational(0);
  return y[1 << c.other_pos];
}

Rational eval_cut_lhs(const Instance& inst, const ExtendedPoint& point, const CutTriple& cut,
                      CutVariant variant) {
  check_point_dims(inst, point);
  if (!cut_in_family(inst, cut))
    throw Error("cut is not in the odd family (partition or parity violated)");

  Rational lhs(0);
  for (EdgeId e : cut.f0) lhs += point.x[inst.graph.edge_index(e)];
  for (EdgeId e : cut.f1) lhs += Rational(1) - point.x[inst.graph.edge_index(e)];

  const auto triangles = labeled_triangles(inst);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    bool crosses = false;
    for (EdgeId e : triangles[t].edge_ids)
      if (edge_set_contains(cut.f0, e) || edge_set_contains(cut.f1, e)) {
        crosses = true;
        break;
      }
    if (!crosses) continue;
    const Rational q = variant == CutVariant::strong
                           ? eval_qstar(triangles[t], cut, point.y[t])
                           : eval_q(triangles[t], cut, point.y[t]);
    lhs -= Rational(2) * q;
  }
  return lhs;
}

ExtendedPoint canonical_y(const Instance& inst, const EdgeSet& m) {
  if (!is_tfree_bfactor(inst, m)) throw Error("canonical_y requires a T-free b-factor");
  ExtendedPoint p;
  p.x.assign(inst.graph.num_edges(), Rational(0));
  for (EdgeId e : m) p.x[inst.graph.edge_index(e)] = Rational(1);
  const auto triangles = labeled_triangles(inst);
  p.y.resize(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    int mask = 0;
    for (int pos = 0; pos < 3; ++pos)
      if (edge_set_contains(m, triangles[t].edge_ids[pos])) mask |= 1 << pos;
    TFB_CHECK(mask != 7, "forbidden triangle fully inside a T-free factor");
    for (int j = 0; j < kNumYSubsets; ++j) p.y[t][j] = Rational(j == mask ? 1 : 0);
  }
  return p;
}

namespace {

std::optional<PointViolation> check_family(const Instance& inst, const ExtendedPoint& p,
                                           Family f,
                                           const std::vector<Triangle>& triangles) {
  switch (f) {
    case Family::f1:
      for (std::size_t vi = 0; vi < inst.graph.num_vertices(); ++vi) {
        Rational lhs(0);
        for (const Edge& e : inst.graph.edges()) {
          const auto idx = inst.graph.edge_index(e.id);
          if (static_cast<std::size_t>(inst.graph.vertex_index(e.u)) == vi) lhs += p.x[idx];
          if (static_cast<std::size_t>(inst.graph.vertex_index(e.v)) == vi) lhs += p.x[idx];
        }
        if (lhs != Rational(inst.b[vi]))
          return PointViolation{Family::f1,
                                "vertex " + std::to_string(inst.graph.vertices()[vi]), lhs};
      }
      return std::nullopt;
    case Family::f2:
      for (const Edge& e : inst.graph.edges()) {
        const Rational& v = p.x[inst.graph.edge_index(e.id)];
        if (v < Rational(0) || v > Rational(1))
          return PointViolation{Family::f2, "edge " + std::to_string(e.id), v};
      }
      return std::nullopt;
    case Family::f4:
      for (std::size_t t = 0; t < triangles.size(); ++t) {
        Rational lhs(0);
        for (EdgeId e : triangles[t].edge_ids) lhs += p.x[inst.graph.edge_index(e)];
        if (lhs > Rational(2))
          return PointViolation{Family::f4, "triangle " + std::to_string(t), lhs};
      }
      return std::nullopt;
    case Family::f5:
      for (std::size_t t = 0; t < triangles.size(); ++t) {
        Rational lhs(0);
        for (int j = 0; j < kNumYSubsets; ++j) lhs += p.y[t][j];
        if (lhs != Rational(1))
          return PointViolation{Family::f5, "triangle " + std::to_string(t), lhs};
      }
      return std::nullopt;
    case Family::f6:
      for (std::size_t t = 0; t < triangles.size(); ++t)
        for (int pos = 0; pos < 3; ++pos) {
          Rational lhs(0);
          for (int mask = 0; mask < kNumYSubsets; ++mask)
            if (mask & (1 << pos)) lhs += p.y[t][mask];
          if (lhs != p.x[inst.graph.edge_index(triangles[t].edge_ids[pos])])
            return PointViolation{Family::f6,
                                  "triangle " + std::to_string(t) + " edge " +
                                      std::to_string(triangles[t].edge_ids[pos]),
                                  lhs};
        }
      return std::nullopt;
    case Family::f7:
      for (std::size_t t = 0; t < triangles.size(); ++t)
        for (int mask = 0; mask < kNumYSubsets; ++mask)
          if (p.y[t][mask] < Rational(0))
            return PointViolation{Family::f7,
                                  "triangle " + std::to_string(t) + " subset " +
                                      std::to_string(mask),
                                  p.y[t][mask]};
      return std::nullopt;
    case Family::f8:
      throw Error("check_point does not evaluate the odd-cut family");
  }
  return std::nullopt;
}

}  // namespace

std::optional<PointViolation> check_point(const Instance& inst, const ExtendedPoint& point,
                                          const std::vector<Family>& families) {
  check_point_dims(inst, point);
  const auto triangles = labeled_triangles(inst);
  for (Family f : families) {
    auto v = check_family(inst, point, f, triangles);
    if (v) return v;
  }
  return std::nullopt;
}

std::optional<PointViolation> check_point(const Instance& inst, const ExtendedPoint& point) {
  return check_point(inst, point,
                     {Family::f1, Family::f2, Family::f4, Family::f5, Family::f6, Family::f7});
}

lp::Row make_cut_row(const Instance& inst, const BaseModel& base, const CutTriple& cut) {
  if (!cut_in_family(inst, cut))
    throw Error("cut is not in the odd family (partition or parity violated)");
  std::map<int, Rational> coeff;
  Rational rhs(1);
  for (EdgeId e : cut.f0) coeff[base.x_var[inst.graph.edge_index(e)]] += 1;
  for (EdgeId e : cut.f1) {
    coeff[base.x_var[inst.graph.edge_index(e)]] -= 1;
    rhs -= 1;
  }
  const auto triangles = labeled_triangles(inst);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    bool crosses = false;
    for (EdgeId e : triangles[t].edge_ids)
      if (edge_set_contains(cut.f0, e) || edge_set_contains(cut.f1, e)) {
        crosses = true;
        break;
      }
    if (!crosses) continue;
    const Crossing c = classify_crossing(triangles[t], cut);
    const Rational minus_two(-2);
    if (c.f0_pos >= 0 && c.f1_pos >= 0) {
      coeff[base.y_var[t][1 << c.f0_pos]] += minus_two;
      coeff[base.y_var[t][(1 << c.f0_pos) | (1 << c.other_pos)]] += minus_two;
    } else if (c.f1_pos < 0) {
      coeff[base.y_var[t][(1 << c.cross_a) | (1 << c.cross_b)]] += minus_two;
    } else {
      coeff[base.y_var[t][0]] += minus_two;
      coeff[base.y_var[t][1 << c.other_pos]] += minus_two;
    }
  }
  lp::Row row;
  for (const auto& [var, c] : coeff)
    if (!c.is_zero()) row.terms.push_back({var, c});
  row.rel = lp::Rel::ge;
  row.rhs = rhs;
  return row;
}

}  // namespace tfb
