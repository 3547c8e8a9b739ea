#include "tfb/io.hpp"

#include <fstream>
#include <set>

namespace tfb::io {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error("expected an integer or a \"p/q\" string, got: " + j.dump());
}

json rational_to_json(const Rational& r) { return r.fraction_str(); }

namespace {

const json& require(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(std::string("missing field \"") + key + "\" in " + where);
  return *it;
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw Error("instance file must be a JSON object");
  Instance inst;

  std::vector<VertexId> vertices;
  std::vector<int> b;
  for (const json& v : require(j, "vertices", "instance")) {
    vertices.push_back(require(v, "id", "vertex").get<int>());
    b.push_back(require(v, "b", "vertex").get<int>());
  }
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  for (const json& e : require(j, "edges", "instance")) {
    edges.push_back({require(e, "id", "edge").get<int>(), require(e, "u", "edge").get<int>(),
                     require(e, "v", "edge").get<int>()});
    weights.push_back(rational_from_json(require(e, "w", "edge")));
  }
  inst.graph = MultiGraph(std::move(vertices), std::move(edges));
  inst.b = std::move(b);
  inst.weights = std::move(weights);

  if (j.contains("triangles")) {
    for (const json& t : j["triangles"]) {
      if (!t.is_array() || t.size() != 3)
        throw Error("triangle entries must be arrays of three edge ids");
      inst.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
  }
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "factor") inst.mode = Mode::factor;
    else if (m == "matching") inst.mode = Mode::matching;
    else throw Error("mode must be \"factor\" or \"matching\", got \"" + m + "\"");
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["vertices"] = json::array();
  for (std::size_t i = 0; i < inst.graph.num_vertices(); ++i)
    j["vertices"].push_back({{"id", inst.graph.vertices()[i]}, {"b", inst.b[i]}});
  j["edges"] = json::array();
  for (std::size_t i = 0; i < inst.graph.num_edges(); ++i) {
    const Edge& e = inst.graph.edges()[i];
    j["edges"].push_back(
        {{"id", e.id}, {"u", e.u}, {"v", e.v}, {"w", rational_to_json(inst.weights[i])}});
  }
  j["triangles"] = json::array();
  for (const auto& t : inst.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  j["mode"] = inst.mode == Mode::factor ? "factor" : "matching";
  return j;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("instance file " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

ExtendedPoint point_from_json(const json& j, const Instance& inst) {
  if (!j.is_object()) throw Error("point file must be a JSON object");
  ExtendedPoint p;
  p.x.assign(inst.graph.num_edges(), Rational(0));
  std::set<EdgeId> seen_x;
  for (const auto& [key, val] : require(j, "x", "point").items()) {
    EdgeId eid;
    try {
      eid = std::stoi(key);
    } catch (...) {
      throw Error("point x keys must be edge ids, got \"" + key + "\"");
    }
    if (!inst.graph.has_edge(eid))
      throw Error("point references unknown edge " + std::to_string(eid));
    if (!seen_x.insert(eid).second)
      throw Error("duplicate x entry for edge " + std::to_string(eid));
    p.x[inst.graph.edge_index(eid)] = rational_from_json(val);
  }
  if (seen_x.size() != inst.graph.num_edges())
    throw Error("point x covers " + std::to_string(seen_x.size()) + " of " +
                std::to_string(inst.graph.num_edges()) + " edges (dimension mismatch)");

  const auto triangles = labeled_triangles(inst);
  p.y.assign(triangles.size(), {});
  std::vector<std::set<int>> seen_y(triangles.size());
  for (const json& entry : require(j, "y", "point")) {
    const int t = require(entry, "t", "y entry").get<int>();
    if (t < 0 || t >= static_cast<int>(triangles.size()))
      throw Error("y entry references unknown triangle index " + std::to_string(t));
    int mask = 0;
    for (const json& je : require(entry, "j", "y entry")) {
      const EdgeId eid = je.get<int>();
      int pos = -1;
      for (int i = 0; i < 3; ++i)
        if (triangles[t].edge_ids[i] == eid) pos = i;
      if (pos < 0)
        throw Error("y entry subset contains edge " + std::to_string(eid) +
                    " not on triangle " + std::to_string(t));
      if (mask & (1 << pos))
        throw Error("y entry subset repeats edge " + std::to_string(eid));
      mask |= 1 << pos;
    }
    if (mask == 7) throw Error("y entry subset equals the full triangle");
    if (!seen_y[t].insert(mask).second)
      throw Error("duplicate y entry for triangle " + std::to_string(t) + " subset mask " +
                  std::to_string(mask));
    p.y[t][mask] = rational_from_json(require(entry, "v", "y entry"));
  }
  for (std::size_t t = 0; t < triangles.size(); ++t)
    if (seen_y[t].size() != kNumYSubsets)
      throw Error("point y covers " + std::to_string(seen_y[t].size()) +
                  " of 7 subsets on triangle " + std::to_string(t) + " (dimension mismatch)");
  return p;
}

json point_to_json(const ExtendedPoint& p, const Instance& inst) {
  json j;
  j["x"] = json::object();
  for (std::size_t i = 0; i < inst.graph.num_edges(); ++i)
    j["x"][std::to_string(inst.graph.edges()[i].id)] = rational_to_json(p.x[i]);
  j["y"] = json::array();
  const auto triangles = labeled_triangles(inst);
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int mask = 0; mask < kNumYSubsets; ++mask) {
      json subset = json::array();
      for (int i = 0; i < 3; ++i)
        if (mask & (1 << i)) subset.push_back(triangles[t].edge_ids[i]);
      j["y"].push_back({{"t", static_cast<int>(t)},
                        {"j", std::move(subset)},
                        {"v", rational_to_json(p.y[t][mask])}});
    }
  return j;
}

ExtendedPoint read_point_file(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open point file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("point file " + path + ": " + e.what());
  }
  return point_from_json(j, inst);
}

json report_to_json(const SolveReport& report) {
  json j;
  if (report.status == SolveStatus::optimal) {
    j["status"] = "optimal";
    j["value"] = rational_to_json(report.optimum);
    j["edges"] = report.factor;
  } else {
    j["status"] = "infeasible";
  }
  j["cuts"] = report.cuts.size();
  j["iterations"] = report.iterations;
  return j;
}

json separation_to_json(const SeparationOutcome& outcome) {
  json j;
  if (outcome.feasible) {
    j["status"] = "feasible";
    return j;
  }
  j["status"] = "violated";
  j["family"] = family_label(outcome.family);
  j["S"] = outcome.cut.s;
  j["F0"] = outcome.cut.f0;
  j["F1"] = outcome.cut.f1;
  j["lhs"] = rational_to_json(outcome.lhs);
  if (!outcome.detail.empty()) j["detail"] = outcome.detail;
  return j;
}

}  // namespace tfb::io
