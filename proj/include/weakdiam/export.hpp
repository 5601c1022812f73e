#pragma once

#include <string>
#include <utility>

#include "weakdiam/graph.hpp"
#include "weakdiam/objects.hpp"

namespace weakdiam {

enum class ExportFormat { kDot, kSvg, kJson };
ExportFormat export_format_from_string(const std::string& name);

// Undirected DOT graph; each vertex carries its color.
std::string export_dot(const Graph& g, const Coloring& coloring);

// Objects drawn as filled convex hulls of their points. Throws
// std::invalid_argument unless the space is two-dimensional with coordinates.
std::string export_svg(const ObjectSystem& objects, const Coloring& coloring);

// {"vertices": n, "adjacency": [[...]], "colors": [...]}.
std::string export_json(const Graph& g, const Coloring& coloring);
std::pair<Graph, Coloring> import_json(const std::string& text);

}  // namespace weakdiam
