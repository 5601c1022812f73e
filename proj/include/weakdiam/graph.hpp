#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "weakdiam/objects.hpp"

namespace weakdiam {

using Vertex = std::uint32_t;
using Hop = std::uint32_t;
using Color = std::uint32_t;

// Distance to a vertex no source can reach.
inline constexpr Hop kUnreachable = std::numeric_limits<Hop>::max();
// Marks an uncolored vertex inside a Coloring under construction.
inline constexpr Color kNoColor = 0;

// Simple undirected graph with sorted, deduplicated adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<Vertex, Vertex>> edges);
  // Symmetrizes and deduplicates; rejects self-loops and out-of-range ids.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency);

  std::size_t size() const { return adjacency_.size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, lexicographic

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
};

// Vertex i of the result is vertices[i] of g.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// i ~ j iff objects i and j share a point.
Graph intersection_graph(const ObjectSystem& system);

// u ~ v iff 1 <= d_G(u,v) <= r. Throws for r < 1.
Graph graph_power(const Graph& g, Hop r);

// Hop distance to the nearest source; kUnreachable where no path exists.
std::vector<Hop> bfs_distances(const Graph& g, std::span<const Vertex> sources);

// Multi-source BFS restricted to vertices with inside[v] != 0, stopping at
// max_depth. Sources outside the mask are ignored.
std::vector<Hop> bfs_within(const Graph& g, std::span<const Vertex> sources,
                            const std::vector<char>& inside, Hop max_depth = kUnreachable);

// Ascending-order greedy scan: returns a maximal independent set of g[within].
std::vector<Vertex> greedy_max_independent_set(const Graph& g, std::span<const Vertex> within);

// Not necessarily proper. colors[v] in 1..palette, or kNoColor while partial.
struct Coloring {
  std::vector<Color> colors;
  Color palette = 0;

  bool is_total() const;
  std::size_t distinct_colors() const;
};

struct MonochromaticComponent {
  Color color = kNoColor;
  std::vector<Vertex> vertices;  // ascending
  Hop diameter = 0;              // measured in the ambient graph
};

// Components of each color class of g[on]; diameters are G-distances.
// Ordered by smallest vertex. Throws if a vertex of `on` is uncolored.
std::vector<MonochromaticComponent> monochromatic_components(const Graph& g, const Coloring& coloring,
                                                             std::span<const Vertex> on);

// Max G-diameter over monochromatic connected subgraphs of g[on].
Hop coloring_diameter(const Graph& g, const Coloring& coloring, std::span<const Vertex> on);
Hop coloring_diameter(const Graph& g, const Coloring& coloring);

std::vector<Vertex> all_vertices(const Graph& g);

}  // namespace weakdiam
