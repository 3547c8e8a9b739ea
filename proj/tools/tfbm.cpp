// tfbm: exact solver for maximum-weight b-factors and b-matchings avoiding
// a set of edge-disjoint forbidden triangles.
//
// Exit codes: 0 success/feasible, 1 error, 2 infeasible (solve),
// 3 violated (separate), and for `verify` nonzero on any oracle mismatch.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tfb/io.hpp"
#include "tfb/sampling.hpp"
#include "tfb/separation.hpp"
#include "tfb/solver.hpp"

namespace {

using tfb::io::json;

int cmd_solve(const std::string& instance_path, const std::string& output_path, long max_cuts) {
  const tfb::Instance inst = tfb::io::read_instance_file(instance_path);
  {
    const auto violations = tfb::validate_instance(inst);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
      return 1;
    }
  }
  tfb::SolveOptions opts;
  opts.max_cuts = max_cuts;
  const tfb::SolveReport report = tfb::solve(inst, opts);
  const json j = tfb::io::report_to_json(report);
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "cannot write " << output_path << "\n";
      return 1;
    }
    out << j.dump(2) << "\n";
  }
  std::cout << j.dump(2) << "\n";
  return report.status == tfb::SolveStatus::optimal ? 0 : 2;
}

int cmd_separate(const std::string& instance_path, const std::string& point_path) {
  const tfb::Instance inst = tfb::io::read_instance_file(instance_path);
  {
    const auto violations = tfb::validate_instance(inst);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
      return 1;
    }
  }
  if (inst.mode != tfb::Mode::factor) {
    std::cerr << "separate requires a factor-mode instance\n";
    return 1;
  }
  const tfb::ExtendedPoint point = tfb::io::read_point_file(point_path, inst);
  const tfb::SeparationOutcome outcome = tfb::separate(inst, point);
  std::cout << tfb::io::separation_to_json(outcome).dump(2) << "\n";
  return outcome.feasible ? 0 : 3;
}

int cmd_enumerate(const std::string& instance_path, int enum_bound) {
  const tfb::Instance inst = tfb::io::read_instance_file(instance_path);
  tfb::EnumOptions opts;
  opts.max_edges = enum_bound;
  const auto factors = tfb::enumerate_tfree_bfactors(inst, opts);
  json j;
  j["count"] = factors.size();
  j["factors"] = factors;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_gen(const std::string& family, std::uint64_t seed, int vertices, int edges,
            int triangles, const std::string& mode) {
  tfb::Instance inst;
  if (family == "k3") {
    inst = tfb::k3_instance(true);
  } else if (family == "k4") {
    inst = tfb::k4_instance();
  } else if (family == "prism") {
    inst = tfb::prism_instance();
  } else if (family == "random") {
    tfb::RandomInstanceParams params;
    params.max_vertices = vertices;
    params.min_vertices = std::min(2, vertices);
    params.max_edges = edges;
    params.max_triangles = triangles;
    params.mode = mode == "matching" ? tfb::Mode::matching : tfb::Mode::factor;
    inst = tfb::random_instance(seed, params);
  } else {
    std::cerr << "unknown family: " << family << "\n";
    return 1;
  }
  std::cout << tfb::io::instance_to_json(inst).dump(2) << "\n";
  return 0;
}

// Oracle cross-checks on a single instance: solver against brute force,
// transformed-graph separation against exhaustive separation on sampled
// points, and hull membership of enumerated factors.
int cmd_verify(const std::string& instance_path, const std::string& level, int enum_bound) {
  const tfb::Instance inst = tfb::io::read_instance_file(instance_path);
  {
    const auto violations = tfb::validate_instance(inst);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
      return 1;
    }
  }
  const bool exhaustive = level == "exhaustive";
  tfb::EnumOptions eopts;
  eopts.max_edges = enum_bound;
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok] " : "[MISMATCH] ") << what << "\n";
    if (!ok) ++failures;
  };

  const tfb::BruteForceResult oracle = tfb::brute_force_optimum(inst, eopts);
  const tfb::SolveReport report = tfb::solve(inst);
  if (oracle.status == tfb::OracleStatus::optimal) {
    check(report.status == tfb::SolveStatus::optimal && report.optimum == oracle.weight,
          "solver optimum equals brute force (" + oracle.weight.fraction_str() + ")");
  } else {
    check(report.status == tfb::SolveStatus::infeasible, "solver agrees instance is infeasible");
    if (report.status == tfb::SolveStatus::infeasible)
      check(tfb::lp::farkas_proves_infeasible(report.final_model, report.farkas),
            "infeasibility certificate verifies");
  }

  if (inst.mode == tfb::Mode::factor) {
    const int n_points = exhaustive ? 25 : 8;
    const auto points = tfb::sample_extended_points(inst, n_points, 20240901);
    bool sep_ok = true;
    for (const auto& p : points) {
      const auto fast = tfb::separate(inst, p);
      const auto slow = tfb::brute_force_separate(inst, p);
      if (fast.feasible != slow.feasible) sep_ok = false;
      if (!fast.feasible && !slow.feasible && fast.lhs != slow.lhs) sep_ok = false;
    }
    check(sep_ok, "separation agrees with exhaustive separation on " +
                      std::to_string(points.size()) + " sampled points");

    if (exhaustive) {
      const auto factors = tfb::enumerate_tfree_bfactors(inst, eopts);
      bool hull_ok = true;
      for (const auto& m : factors) {
        std::vector<tfb::Rational> x(inst.graph.num_edges(), tfb::Rational(0));
        for (tfb::EdgeId e : m) x[inst.graph.edge_index(e)] = tfb::Rational(1);
        if (!tfb::hull_membership(inst, x, eopts).inside) hull_ok = false;
      }
      check(hull_ok, "every enumerated factor lies in its own hull (" +
                         std::to_string(factors.size()) + " factors)");
      bool canon_ok = true;
      for (const auto& m : factors) {
        const auto p = tfb::canonical_y(inst, m);
        if (tfb::check_point(inst, p)) canon_ok = false;
        if (!tfb::separate(inst, p).feasible) canon_ok = false;
      }
      check(canon_ok, "canonical points of all factors pass every family");
    }
  }

  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact T-free b-factor / b-matching solver"};
  app.require_subcommand(1);

  std::string instance_path, point_path, output_path, level = "quick", family,
              mode = "factor";
  long max_cuts = 10000;
  int enum_bound = 24;
  std::uint64_t seed = 1;
  int gen_vertices = 6, gen_edges = 12, gen_triangles = 3;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_option("--output", output_path, "also write the report here");
  solve->add_option("--max-cuts", max_cuts, "cut limit for the separation loop");

  auto* separate = app.add_subcommand("separate", "separate an extended point");
  separate->add_option("instance", instance_path, "instance JSON file")->required();
  separate->add_option("point", point_path, "extended point JSON file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list all T-free b-factors");
  enumerate->add_option("instance", instance_path, "instance JSON file")->required();
  enumerate->add_option("--enum-bound", enum_bound, "edge-count bound for enumeration");

  auto* verify = app.add_subcommand("verify", "cross-check the oracles on one instance");
  verify->add_option("instance", instance_path, "instance JSON file")->required();
  verify->add_option("--level", level, "quick|exhaustive")
      ->check(CLI::IsMember({"quick", "exhaustive"}));
  verify->add_option("--enum-bound", enum_bound, "edge-count bound for enumeration");

  auto* gen = app.add_subcommand("gen", "emit an instance on stdout");
  gen->add_option("family", family, "k3|k4|prism|random")->required();
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--vertices", gen_vertices, "max vertices (random)");
  gen->add_option("--edges", gen_edges, "max edges (random)");
  gen->add_option("--triangles", gen_triangles, "max forbidden triangles (random)");
  gen->add_option("--mode", mode, "factor|matching (random)")
      ->check(CLI::IsMember({"factor", "matching"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(instance_path, output_path, max_cuts);
    if (separate->parsed()) return cmd_separate(instance_path, point_path);
    if (enumerate->parsed()) return cmd_enumerate(instance_path, enum_bound);
    if (verify->parsed()) return cmd_verify(instance_path, level, enum_bound);
    if (gen->parsed()) return cmd_gen(family, seed, gen_vertices, gen_edges, gen_triangles, mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
