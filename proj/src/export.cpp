#include "weakdiam/export.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace weakdiam {

ExportFormat export_format_from_string(const std::string& name) {
  if (name == "dot") return ExportFormat::kDot;
  if (name == "svg") return ExportFormat::kSvg;
  if (name == "json") return ExportFormat::kJson;
  throw std::invalid_argument("unknown export format '" + name + "' (dot, svg, json)");
}

namespace {

constexpr std::array<const char*, 8> kFills = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                               "#ff7f00", "#a6a600", "#a65628", "#f781bf"};

const char* fill_for(Color c) { return c == kNoColor ? "#999999" : kFills[(c - 1) % kFills.size()]; }

void require_colors(const Coloring& coloring, std::size_t n) {
  if (coloring.colors.size() != n) throw std::invalid_argument("coloring does not match the graph");
}

using P = std::pair<double, double>;

double cross(const P& o, const P& a, const P& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Monotone chain; collinear points dropped.
std::vector<P> convex_hull(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::string export_dot(const Graph& g, const Coloring& coloring) {
  require_colors(coloring, g.size());
  std::ostringstream out;
  out << "graph weakdiam {\n  node [style=filled];\n";
  for (Vertex v = 0; v < g.size(); ++v)
    out << "  " << v << " [color=" << coloring.colors[v] << ", fillcolor=\"" << fill_for(coloring.colors[v])
        << "\"];\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string export_svg(const ObjectSystem& objects, const Coloring& coloring) {
  const Space& space = objects.space();
  if (!space.has_coordinates() || space.dimension() != 2)
    throw std::invalid_argument("svg export needs a two-dimensional coordinate space");
  require_colors(coloring, objects.size());
  double lo_x = 0, lo_y = 0, hi_x = 1, hi_y = 1;
  for (PointId p = 0; p < space.size(); ++p) {
    const auto y = space.point(p);
    if (p == 0) {
      lo_x = hi_x = y[0];
      lo_y = hi_y = y[1];
    }
    lo_x = std::min(lo_x, y[0]);
    hi_x = std::max(hi_x, y[0]);
    lo_y = std::min(lo_y, y[1]);
    hi_y = std::max(hi_y, y[1]);
  }
  const double size = 800.0, margin = 10.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = (size - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
  auto sy = [&](double y) { return size - margin - (y - lo_y) * scale; };

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  for (std::size_t i = 0; i < objects.size(); ++i) {
    std::vector<P> pts;
    for (PointId p : objects.object(i)) {
      const auto y = space.point(p);
      pts.emplace_back(sx(y[0]), sy(y[1]));
    }
    const auto hull = convex_hull(std::move(pts));
    const char* fill = fill_for(coloring.colors[i]);
    out << "  <g data-object=\"" << i << "\" data-color=\"" << coloring.colors[i] << "\">";
    if (hull.size() == 1) {
      out << "<circle cx=\"" << hull[0].first << "\" cy=\"" << hull[0].second << "\" r=\"3\" fill=\"" << fill << "\"/>";
    } else if (hull.size() == 2) {
      out << "<line x1=\"" << hull[0].first << "\" y1=\"" << hull[0].second << "\" x2=\"" << hull[1].first
          << "\" y2=\"" << hull[1].second << "\" stroke=\"" << fill << "\" stroke-width=\"3\"/>";
    } else {
      out << "<polygon points=\"";
      for (std::size_t j = 0; j < hull.size(); ++j) out << (j ? " " : "") << hull[j].first << ',' << hull[j].second;
      out << "\" fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"" << fill << "\"/>";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string export_json(const Graph& g, const Coloring& coloring) {
  require_colors(coloring, g.size());
  nlohmann::json adjacency = nlohmann::json::array();
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto nb = g.neighbors(v);
    adjacency.push_back(std::vector<Vertex>(nb.begin(), nb.end()));
  }
  nlohmann::json doc = {{"vertices", g.size()}, {"adjacency", std::move(adjacency)}, {"colors", coloring.colors}};
  return doc.dump() + "\n";
}

std::pair<Graph, Coloring> import_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const auto n = doc.at("vertices").get<std::size_t>();
  auto adjacency = doc.at("adjacency").get<std::vector<std::vector<Vertex>>>();
  auto colors = doc.at("colors").get<std::vector<Color>>();
  if (adjacency.size() != n || colors.size() != n) throw std::invalid_argument("vertex count mismatch");
  Coloring coloring{std::move(colors), 0};
  for (Color c : coloring.colors) coloring.palette = std::max(coloring.palette, c);
  return {Graph::from_adjacency(std::move(adjacency)), std::move(coloring)};
}

}  // namespace weakdiam
