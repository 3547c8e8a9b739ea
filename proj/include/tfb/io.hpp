#ifndef TFB_IO_HPP
#define TFB_IO_HPP

#include <string>

#include <json.hpp>

#include "tfb/formulation.hpp"
#include "tfb/graph.hpp"
#include "tfb/separation.hpp"
#include "tfb/solver.hpp"

namespace tfb::io {

using json = nlohmann::ordered_json;

/// Instance schema:
/// {"vertices":[{"id":int,"b":int}], "edges":[{"id":int,"u":int,"v":int,
///  "w":"p/q"|int}], "triangles":[[eid,eid,eid]], "mode":"factor"|"matching"}
Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);

Instance read_instance_file(const std::string& path);

/// Point schema:
/// {"x": {"<eid>": "p/q", ...},
///  "y": [{"t": triangle-index, "j": [eids], "v": "p/q"}, ...]}
/// All edges and all 7 subsets per triangle must be present exactly once.
ExtendedPoint point_from_json(const json& j, const Instance& inst);
json point_to_json(const ExtendedPoint& p, const Instance& inst);

ExtendedPoint read_point_file(const std::string& path, const Instance& inst);

/// {"status","value","edges","cuts","iterations"}; value/edges omitted on
/// infeasible.
json report_to_json(const SolveReport& report);

/// {"status":"feasible"} or
/// {"status":"violated","family":"(k)","S":[vids],"F0":[eids],"F1":[eids],
///  "lhs":"p/q"} plus "detail" for the static families.
json separation_to_json(const SeparationOutcome& outcome);

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

}  // namespace tfb::io

#endif  // TFB_IO_HPP
