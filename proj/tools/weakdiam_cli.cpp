// weakdiam: generate instances, color intersection-graph powers, verify and
// export results.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakdiam/export.hpp"
#include "weakdiam/generate.hpp"
#include "weakdiam/parallel.hpp"
#include "weakdiam/pipeline.hpp"
#include "weakdiam/spacefill.hpp"

namespace {

using namespace weakdiam;
using nlohmann::json;

constexpr int kFailed = 1;
constexpr int kError = 2;

int run_gen(const GenerateParams& params, const std::string& out, bool report_eta) {
  const Instance instance = generate(params);
  save_instance(instance, out);
  std::cout << "wrote " << out << ": " << instance.space->size() << " points, " << instance.objects.size()
            << " objects\n";
  if (report_eta) {
    const auto eta = round_eta(instance);
    if (eta) std::cout << "eta " << *eta << "\n";
    else std::cout << "eta none\n";
  }
  return 0;
}

int run_solve(const std::string& input, std::uint32_t radius, const std::string& out, bool product) {
  const Instance instance = load_instance(input);
  PipelineOptions options;
  options.construction = product ? CoverConstruction::kProduct : CoverConstruction::kDiagonal;
  const SolveResult result = weak_diameter_coloring(instance, radius, options);
  save_result(result, out);
  const Certificate& c = result.certificate;
  std::cout << "radius " << c.requested_radius << " (colored G^" << c.radius << "), " << c.colors_used << "/"
            << c.color_limit << " colors, diameter " << c.requested_diameter << " <= " << c.requested_bound.str()
            << (c.passed() ? ", certificate passed\n" : ", certificate FAILED\n");
  return c.passed() ? 0 : kFailed;
}

int run_verify(const std::string& input, const std::string& result_path) {
  const Instance instance = load_instance(input);
  const StoredResult stored = load_result(result_path);
  bool ok = true;
  auto line = [&](const std::string& what, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
    ok = ok && pass;
  };

  BigInt bound = 0;
  const json& c = stored.certificate;
  for (const auto& part : c.at("parts")) bound = std::max(bound, w_bound(part.at("k").get<std::size_t>()));
  const BigInt expected = stored.radius % 2 == 1 ? bound : 2 * bound;
  line("bound matches recurrence", expected == stored.bound, expected.str() + " vs " + stored.bound.str());
  const auto families = c.at("families").get<std::size_t>();
  line("color limit", stored.color_limit == 2 * families, std::to_string(stored.color_limit));
  line("certificate flags", stored.claimed_pass);
  const auto report = independent_verify(instance, stored.radius, stored.colors, stored.color_limit, stored.bound);
  line("colors", report.colors_ok, report.detail);
  line("diameter", report.diameter_ok, report.detail);
  return ok ? 0 : kFailed;
}

int run_profile(const std::string& input, const std::string& queries_path, const std::string& out) {
  const Instance instance = load_instance(input);
  const json spec = parse_json_text(read_text_file(queries_path));
  for (const auto& [key, value] : spec.items())
    if (key != "queries" && key != "t" && key != "limit") throw FormatError(key, "unknown field");
  const Hop t = spec.value("t", Hop{0});
  const std::size_t limit = spec.value("limit", kDefaultExactLimit);
  const ObjectSystem system = shallow_union_system(instance.objects, t);
  const auto diameters = object_diameters(system);

  json rows = json::array();
  std::size_t index = 0;
  for (const auto& q : spec.at("queries")) {
    const std::string at = "queries[" + std::to_string(index++) + "]";
    for (const auto& [key, value] : q.items())
      if (key != "x" && key != "r" && key != "s" && key != "mode") throw FormatError(at + "." + key, "unknown field");
    SpacefillQuery query{q.at("x").get<PointId>(), q.at("r").get<double>(), q.at("s").get<double>()};
    if (query.x >= instance.space->size()) throw FormatError(at + ".x", "point index out of range");
    const std::string mode_name = q.value("mode", std::string("exact"));
    if (mode_name != "exact" && mode_name != "greedy") throw FormatError(at + ".mode", "expected exact or greedy");
    const CountMode mode = mode_name == "exact" ? CountMode::kExact : CountMode::kGreedy;
    json row = {{"x", query.x}, {"r", query.r}, {"s", query.s}, {"mode", mode_name}};
    try {
      row["count"] = spacefill_count(system, diameters, query, mode, limit);
    } catch (const CandidateLimitExceeded& e) {
      row["count"] = nullptr;
      row["candidates"] = e.candidates;
    }
    rows.push_back(std::move(row));
  }
  const json doc = {{"t", t}, {"profile", std::move(rows)}};
  if (out.empty()) std::cout << doc.dump(1) << "\n";
  else write_text_file(out, doc.dump(1) + "\n");
  return 0;
}

int run_export(const std::string& input, const std::string& result_path, const std::string& format,
               const std::string& which, const std::string& out) {
  const Instance instance = load_instance(input);
  const StoredResult stored = load_result(result_path);
  Coloring coloring{stored.colors, 0};
  for (Color c : coloring.colors) coloring.palette = std::max(coloring.palette, c);
  Graph g = intersection_graph(instance.objects);
  if (which == "power" && stored.radius > 1) g = graph_power(g, stored.radius);
  std::string text;
  switch (export_format_from_string(format)) {
    case ExportFormat::kDot: text = export_dot(g, coloring); break;
    case ExportFormat::kSvg: text = export_svg(instance.objects, coloring); break;
    case ExportFormat::kJson: text = export_json(g, coloring); break;
  }
  if (out.empty()) std::cout << text;
  else write_text_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-diameter colorings of intersection-graph powers"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: WEAKDIAM_THREADS or runtime default)");

  GenerateParams params;
  std::string kind = "disks", metric = "l2", gen_out;
  bool report_eta = false;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--kind", kind, "disks, boxes or grid-objects")->capture_default_str();
  gen->add_option("-n,--dimension", params.dimension)->capture_default_str();
  gen->add_option("--points", params.points)->capture_default_str();
  gen->add_option("--objects", params.objects)->capture_default_str();
  gen->add_option("--rmin", params.radius_min)->capture_default_str();
  gen->add_option("--rmax", params.radius_max)->capture_default_str();
  gen->add_option("--extent", params.extent)->capture_default_str();
  gen->add_flag("--grid-cloud", params.grid_cloud, "Lattice cloud instead of uniform samples");
  gen->add_option("--metric", metric, "l2 or linf")->capture_default_str();
  gen->add_option("--seed", params.seed)->capture_default_str();
  gen->add_flag("--eta", report_eta, "Report the largest power-of-two eta making every object round");
  gen->add_option("-o,--out", gen_out)->required();

  std::string input, out, result_path, queries, format = "json", which = "power";
  std::uint32_t radius = 1;
  bool product = false;
  auto* solve = app.add_subcommand("solve", "Color G^r and write a certified result");
  solve->add_option("-i,--input", input)->required();
  solve->add_option("-r,--radius", radius)->required()->check(CLI::PositiveNumber);
  solve->add_option("-o,--out", out)->required();
  solve->add_option("--threads", threads);
  solve->add_flag("--product-covers", product, "Use 2^n product grid families");

  auto* verify = app.add_subcommand("verify", "Re-check a result against its instance");
  verify->add_option("-i,--input", input)->required();
  verify->add_option("--result", result_path)->required();
  verify->add_option("--threads", threads);

  auto* profile = app.add_subcommand("profile", "Count disjoint large objects near query balls");
  profile->add_option("-i,--input", input)->required();
  profile->add_option("--queries", queries)->required();
  profile->add_option("-o,--out", out);

  auto* exporter = app.add_subcommand("export", "Write the colored graph as dot, svg or json");
  exporter->add_option("-i,--input", input)->required();
  exporter->add_option("--result", result_path)->required();
  exporter->add_option("--format", format)->check(CLI::IsMember({"dot", "svg", "json"}))->capture_default_str();
  exporter->add_option("--graph", which)->check(CLI::IsMember({"base", "power"}))->capture_default_str();
  exporter->add_option("-o,--out", out);

  CLI11_PARSE(app, argc, argv);

  if (const int env = thread_count_from_env(); env > 0) set_thread_count(env);
  if (threads > 0) set_thread_count(threads);

  try {
    if (*gen) {
      params.kind = generator_kind_from_string(kind);
      params.metric = metric_kind_from_string(metric);
      return run_gen(params, gen_out, report_eta);
    }
    if (*solve) return run_solve(input, radius, out, product);
    if (*verify) return run_verify(input, result_path);
    if (*profile) return run_profile(input, queries, out);
    if (*exporter) return run_export(input, result_path, format, which, out);
  } catch (const PipelineError& e) {
    std::cerr << "stage " << e.stage << " failed: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
