#include "weakdiam/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>

#include "weakdiam/decomp.hpp"
#include "weakdiam/parallel.hpp"
#include "weakdiam/spacefill.hpp"

namespace weakdiam {

using nlohmann::json;

PipelineError::PipelineError(const std::string& at, const std::string& detail)
    : std::runtime_error(at + ": " + detail), stage(at) {}

namespace {

struct ScaleRange {
  int lo = 0;
  int hi = 0;
};

ScaleRange needed_scales(double k, const std::vector<double>& diameters) {
  double smallest = 0.0, largest = 0.0;
  for (double d : diameters)
    if (d > 0.0) {
      smallest = smallest == 0.0 ? d : std::min(smallest, d);
      largest = std::max(largest, d);
    }
  if (largest == 0.0) return {0, 0};
  const int top = scale_index(k, largest);
  return {scale_index(k, smallest) - 1, scale_index(k, largest + half_scale(k, top)) + 1};
}

struct Assignment {
  std::vector<std::size_t> family;
  std::vector<ElementId> element;
  std::optional<std::size_t> uncaught;
};

Assignment assign_families(const Web& web, const ObjectSystem& unions, const std::vector<double>& diameters) {
  const std::size_t m = unions.size();
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  Assignment a{std::vector<std::size_t>(m, kMissing), std::vector<ElementId>(m, 0), std::nullopt};
  const auto total = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < total; ++i)
    for (std::size_t f = 0; f < web.family_count(); ++f) {
      const auto hit = catch_in_family(web, f, unions.object(i), diameters[i], web.catch_constant());
      if (hit) {
        a.family[i] = f;
        a.element[i] = *hit;
        break;
      }
    }
  for (std::size_t i = 0; i < m; ++i)
    if (a.family[i] == kMissing) {
      a.uncaught = i;
      break;
    }
  return a;
}

Web make_web(const Instance& instance, const ScaleRange& range, CoverConstruction construction) {
  try {
    if (instance.covers)
      return build_web_from_covers(instance.space, instance.covers->mesh_constant, instance.covers->scales);
    return build_web(instance.space, range.lo, range.hi, construction);
  } catch (const CoverFailure& e) {
    throw PipelineError("covers", e.what());
  }
}

BigInt max_bound(const std::vector<PartCertificate>& parts) {
  BigInt best = 0;
  for (const auto& p : parts) best = std::max(best, p.w_bound);
  return best;
}

std::size_t distinct(const std::vector<Color>& colors) {
  return std::set<Color>(colors.begin(), colors.end()).size();
}

struct PartOutput {
  PartCertificate cert;
  std::vector<Color> local;
  bool domination_ok = false;
  std::string failure;
};

PartOutput solve_part(const Web& web, const ObjectSystem& unions, const Graph& power,
                      const std::vector<std::size_t>& ids, const std::vector<ElementId>& caught, std::size_t family) {
  PartOutput out;
  out.cert.family = family + 1;
  out.cert.size = ids.size();
  out.cert.palette_low = static_cast<Color>(2 * family + 1);
  const ObjectSystem part = unions.subsystem(ids);
  std::vector<Vertex> vertices(ids.begin(), ids.end());
  const Graph g = induced_subgraph(power, vertices);
  std::vector<ElementId> part_caught;
  for (std::size_t id : ids) part_caught.push_back(caught[id]);

  TreeDecomposition td = build_tree_decomposition(part, web, part_caught);
  out.cert.k = bag_domination(td, g);
  out.cert.w_bound = w_bound(out.cert.k);
  out.cert.tree_nodes = td.nodes.size();
  const auto report = verify_tree_decomposition(g, td);
  out.cert.decomposition_valid = report.valid();
  out.domination_ok = report.valid();
  if (!report.valid()) {
    out.failure = "family " + std::to_string(family + 1) + ": " + report.describe();
    return out;
  }
  ColoringStats stats;
  ColoringOptions options;
  options.stats = &stats;
  Coloring local = two_color(g, td, out.cert.k, options);
  out.cert.narrowness_violations = stats.narrowness_violations;
  out.cert.part_diameter = coloring_diameter(g, local);
  out.local = std::move(local.colors);
  return out;
}

}  // namespace

SolveResult weak_diameter_coloring(const Instance& instance, std::uint32_t r, const PipelineOptions& options) {
  if (r < 1) throw std::invalid_argument("radius must be at least 1");
  if (options.threads > 0) set_thread_count(options.threads);
  const std::uint32_t odd = r % 2 == 1 ? r : r + 1;
  const std::uint32_t t = (odd - 1) / 2;

  SolveResult result;
  result.radius = r;
  Certificate& cert = result.certificate;
  cert.requested_radius = r;
  cert.radius = odd;
  cert.t = t;
  cert.f_r = "x -> f(" + std::to_string(2 * t + 2) + "*(x+1))";

  const ObjectSystem& objects = instance.objects;
  const std::size_t m = objects.size();
  const Graph base = intersection_graph(objects);
  const ObjectSystem unions = shallow_union_system(objects, base, t);
  const Graph power = intersection_graph(unions);
  if (!(power == graph_power(base, odd))) throw PipelineError("power_identity", "intersection graph of the unions differs from G^r");
  cert.checks.power_identity = true;

  const auto diameters = object_diameters(unions);
  double k = instance.covers ? instance.covers->mesh_constant
                             : grid_mesh_constant(instance.space->kind(), instance.space->dimension(),
                                                  options.construction);
  ScaleRange range = needed_scales(k, diameters);
  Web web = make_web(instance, range, options.construction);
  Assignment assignment = assign_families(web, unions, diameters);
  if (assignment.uncaught && !instance.covers) {
    range = {range.lo - 2, range.hi + 2};
    web = make_web(instance, range, options.construction);
    cert.widened = true;
    assignment = assign_families(web, unions, diameters);
  }
  if (assignment.uncaught)
    throw PipelineError("catch", "no family catches object " + std::to_string(*assignment.uncaught));
  cert.checks.covers = true;
  cert.mesh_constant = web.mesh_constant();
  cert.catch_constant = web.catch_constant();
  cert.families = web.family_count();
  cert.construction = instance.covers ? "explicit" : to_string(options.construction);
  cert.min_scale = web.min_scale();
  cert.max_scale = web.max_scale();
  cert.color_limit = 2 * cert.families;

  for (std::size_t f = 0; f < web.family_count(); ++f) {
    const auto report = verify_laminar(web, f);
    if (!report.valid()) throw PipelineError("laminar", "family " + std::to_string(f + 1) + ": " + report.describe(web));
  }
  cert.checks.laminar = true;

  std::vector<std::vector<std::size_t>> members(web.family_count());
  for (std::size_t i = 0; i < m; ++i) members[assignment.family[i]].push_back(i);
  std::vector<std::size_t> used;
  for (std::size_t f = 0; f < members.size(); ++f)
    if (!members[f].empty()) used.push_back(f);

  std::vector<PartOutput> outputs(used.size());
  std::vector<std::exception_ptr> errors(used.size());
  const auto part_total = static_cast<long>(used.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long p = 0; p < part_total; ++p) {
    try {
      outputs[p] = solve_part(web, unions, power, members[used[p]], assignment.element, used[p]);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& out : outputs)
    if (!out.failure.empty()) throw PipelineError("decomposition", out.failure);
  cert.checks.decompositions = true;
  cert.checks.domination = std::all_of(outputs.begin(), outputs.end(), [](const PartOutput& o) { return o.domination_ok; });

  result.coloring = Coloring{std::vector<Color>(m, kNoColor), static_cast<Color>(cert.color_limit)};
  for (std::size_t p = 0; p < used.size(); ++p) {
    const auto& ids = members[used[p]];
    for (std::size_t j = 0; j < ids.size(); ++j)
      result.coloring.colors[ids[j]] = outputs[p].cert.palette_low + outputs[p].local[j] - 1;
  }
  for (std::size_t p = 0; p < used.size(); ++p) {
    const auto& ids = members[used[p]];
    std::vector<Vertex> on(ids.begin(), ids.end());
    outputs[p].cert.power_diameter = coloring_diameter(power, result.coloring, on);
    cert.parts.push_back(outputs[p].cert);
  }

  bool palette_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Color c = result.coloring.colors[i];
    const auto low = static_cast<Color>(2 * assignment.family[i] + 1);
    if (c != low && c != low + 1) palette_ok = false;
  }
  cert.colors_used = distinct(result.coloring.colors);
  cert.checks.palette = palette_ok && cert.colors_used <= cert.color_limit;

  cert.bound = max_bound(cert.parts);
  cert.measured_diameter = coloring_diameter(power, result.coloring);
  if (odd == r) {
    cert.requested_bound = cert.bound;
    cert.requested_diameter = cert.measured_diameter;
  } else {
    cert.requested_bound = 2 * cert.bound;
    cert.requested_diameter = coloring_diameter(graph_power(base, r), result.coloring);
  }
  cert.checks.diameter = BigInt(cert.measured_diameter) <= cert.bound &&
                         BigInt(cert.requested_diameter) <= cert.requested_bound;

  const auto independent = independent_verify(instance, r, result.coloring.colors, cert.color_limit,
                                              cert.requested_bound);
  cert.checks.independent = independent.passed() && independent.diameter == cert.requested_diameter &&
                            independent.colors_used == cert.colors_used;
  return result;
}

json certificate_to_json(const Certificate& c) {
  json parts = json::array();
  for (const auto& p : c.parts)
    parts.push_back({{"family", p.family},
                     {"size", p.size},
                     {"k", p.k},
                     {"w_bound", p.w_bound.str()},
                     {"part_diameter", p.part_diameter},
                     {"power_diameter", p.power_diameter},
                     {"palette", {p.palette_low, p.palette_low + 1}},
                     {"tree_nodes", p.tree_nodes},
                     {"narrowness_violations", p.narrowness_violations},
                     {"decomposition_valid", p.decomposition_valid}});
  json doc = {{"requested_radius", c.requested_radius},
              {"radius", c.radius},
              {"t", c.t},
              {"K", c.mesh_constant},
              {"C", c.catch_constant},
              {"families", c.families},
              {"construction", c.construction},
              {"scale_range", {c.min_scale, c.max_scale}},
              {"widened", c.widened},
              {"f_r", c.f_r},
              {"parts", std::move(parts)},
              {"colors_used", c.colors_used},
              {"color_limit", c.color_limit},
              {"bound", c.bound.str()},
              {"requested_bound", c.requested_bound.str()},
              {"measured_diameter", c.measured_diameter},
              {"requested_diameter", c.requested_diameter},
              {"checks",
               {{"covers", c.checks.covers},
                {"laminar", c.checks.laminar},
                {"power_identity", c.checks.power_identity},
                {"decompositions", c.checks.decompositions},
                {"domination", c.checks.domination},
                {"diameter", c.checks.diameter},
                {"palette", c.checks.palette},
                {"independent", c.checks.independent}}},
              {"passed", c.passed()}};
  if (c.radius != c.requested_radius)
    doc["even_radius_note"] = "colored G^" + std::to_string(c.radius) + "; the bound for G^" +
                              std::to_string(c.requested_radius) + " is twice the bound for G^" +
                              std::to_string(c.radius);
  return doc;
}

json result_to_json(const SolveResult& result) {
  return {{"radius", result.radius},
          {"colors", result.coloring.colors},
          {"certificate", certificate_to_json(result.certificate)}};
}

std::string result_text(const SolveResult& result) {
  std::string certificate = certificate_to_json(result.certificate).dump(1);
  for (std::size_t at = certificate.find('\n'); at != std::string::npos; at = certificate.find('\n', at + 2))
    certificate.insert(at + 1, " ");
  return "{\n \"radius\": " + std::to_string(result.radius) + ",\n \"colors\": " +
         nlohmann::json(result.coloring.colors).dump() + ",\n \"certificate\": " + certificate + "\n}\n";
}

void save_result(const SolveResult& result, const std::string& path) { write_text_file(path, result_text(result)); }

StoredResult stored_result_from_json(const json& doc) {
  StoredResult stored;
  try {
    stored.radius = doc.at("radius").get<std::uint32_t>();
    stored.colors = doc.at("colors").get<std::vector<Color>>();
    stored.certificate = doc.at("certificate");
    const json& c = stored.certificate;
    stored.color_limit = c.at("color_limit").get<std::size_t>();
    stored.claimed_pass = c.at("passed").get<bool>();
    stored.bound = BigInt(c.at("requested_bound").get<std::string>());
  } catch (const json::exception& e) {
    throw FormatError("result", e.what());
  } catch (const std::runtime_error& e) {
    throw FormatError("certificate.requested_bound", e.what());
  }
  if (stored.radius < 1) throw FormatError("radius", "radius must be at least 1");
  return stored;
}

StoredResult load_result(const std::string& path) { return stored_result_from_json(parse_json_text(read_text_file(path))); }

IndependentReport independent_verify(const Instance& instance, std::uint32_t r, const std::vector<Color>& colors,
                                     std::size_t color_limit, const BigInt& bound) {
  IndependentReport report;
  const ObjectSystem& objects = instance.objects;
  const std::size_t m = objects.size();
  if (colors.size() != m) {
    report.detail = "expected " + std::to_string(m) + " colors, found " + std::to_string(colors.size());
    return report;
  }

  // Base graph from point buckets.
  std::vector<std::vector<std::uint32_t>> holders(instance.space->size());
  for (std::uint32_t i = 0; i < m; ++i)
    for (PointId p : objects.object(i)) holders[p].push_back(i);
  std::vector<std::set<std::uint32_t>> near(m);
  for (const auto& list : holders)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        near[list[a]].insert(list[b]);
        near[list[b]].insert(list[a]);
      }

  // Power graph: hop-limited BFS from each vertex.
  std::vector<std::vector<std::uint32_t>> power(m);
  std::vector<std::int64_t> depth(m, -1);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t s = 0; s < m; ++s) {
    std::vector<std::uint32_t> touched{s};
    depth[s] = 0;
    frontier.assign(1, s);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const std::uint32_t u = frontier[head];
      if (depth[u] == static_cast<std::int64_t>(r)) continue;
      for (std::uint32_t v : near[u])
        if (depth[v] < 0) {
          depth[v] = depth[u] + 1;
          frontier.push_back(v);
          touched.push_back(v);
          power[s].push_back(v);
        }
    }
    for (std::uint32_t v : touched) depth[v] = -1;
  }

  std::set<Color> palette;
  for (Color c : colors) {
    if (c == kNoColor) {
      report.detail = "uncolored vertex";
      return report;
    }
    palette.insert(c);
  }
  report.colors_used = palette.size();
  report.colors_ok = report.colors_used <= color_limit;

  std::vector<std::uint32_t> root(m);
  std::iota(root.begin(), root.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (std::uint32_t u = 0; u < m; ++u)
    for (std::uint32_t v : power[u])
      if (colors[u] == colors[v]) root[find(u)] = find(v);
  std::vector<std::uint32_t> label(m);
  for (std::uint32_t v = 0; v < m; ++v) label[v] = find(v);

  // Per vertex: farthest same-class vertex in the whole power graph.
  std::vector<Hop> far(m, 0);
  const auto total = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 8)
  for (long s = 0; s < total; ++s) {
    std::vector<Hop> dist(m, kUnreachable);
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      for (std::uint32_t v : power[u])
        if (dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    for (std::uint32_t v = 0; v < m; ++v)
      if (label[v] == label[s]) far[s] = std::max(far[s], dist[v]);
  }
  report.diameter = m == 0 ? 0 : *std::max_element(far.begin(), far.end());
  report.diameter_ok = BigInt(report.diameter) <= bound;
  report.detail = "colors " + std::to_string(report.colors_used) + "/" + std::to_string(color_limit) +
                  ", diameter " + std::to_string(report.diameter) + " vs bound " + bound.str();
  return report;
}

}  // namespace weakdiam
