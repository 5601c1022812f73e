#include "weakdiam/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace weakdiam {

namespace {

void normalize(std::vector<Vertex>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

// Single-source BFS that stops once every vertex flagged in `wanted` has been
// reached; returns the largest distance among them.
Hop farthest_wanted(const Graph& g, Vertex source, const std::vector<char>& wanted,
                    std::size_t wanted_count, std::vector<Hop>& dist) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  std::size_t found = wanted[source] ? 1 : 0;
  Hop far = 0;
  while (!queue.empty() && found < wanted_count) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      if (wanted[v]) {
        ++found;
        far = std::max(far, dist[v]);
      }
      queue.push_back(v);
    }
  }
  if (found < wanted_count) return kUnreachable;
  return far;
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::vector<Vertex>> adj(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Graph g;
  g.adjacency_ = std::move(adj);
  for (auto& list : g.adjacency_) normalize(list);
  return g;
}

Graph Graph::from_adjacency(std::vector<std::vector<Vertex>> adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::vector<Vertex>> sym(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : adjacency[u]) {
      if (v >= n) throw std::out_of_range("neighbor id out of range");
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      sym[u].push_back(v);
      sym[v].push_back(u);
    }
  Graph g;
  g.adjacency_ = std::move(sym);
  for (auto& list : g.adjacency_) normalize(list);
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& list = adjacency_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total / 2;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < adjacency_.size(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  return all;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.size(), kUnreachable);
  for (Vertex i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<std::vector<Vertex>> adj(vertices.size());
  for (Vertex i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] != kUnreachable) adj[i].push_back(local[w]);
  return Graph::from_adjacency(std::move(adj));
}

Graph intersection_graph(const ObjectSystem& system) {
  const std::size_t m = system.size();
  const std::size_t n = system.space().size();
  // Inverted index: point -> objects containing it (ascending object id).
  std::vector<std::vector<Vertex>> holders(n);
  for (Vertex i = 0; i < m; ++i)
    for (PointId p : system.object(i)) holders[p].push_back(i);

  std::vector<std::vector<Vertex>> adj(m);
  const auto count = static_cast<long>(m);
#pragma omp parallel
  {
    std::vector<char> seen(m, 0);
#pragma omp for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) {
      auto& out = adj[i];
      for (PointId p : system.object(i))
        for (Vertex j : holders[p])
          if (j != static_cast<Vertex>(i) && !seen[j]) {
            seen[j] = 1;
            out.push_back(j);
          }
      for (Vertex j : out) seen[j] = 0;
      std::sort(out.begin(), out.end());
    }
  }
  return Graph::from_adjacency(std::move(adj));
}

Graph graph_power(const Graph& g, Hop r) {
  if (r < 1) throw std::invalid_argument("graph power needs r >= 1");
  if (r == 1) return g;
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> adj(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel
  {
    std::vector<Hop> dist(n, kUnreachable);
    std::vector<Vertex> touched;
#pragma omp for schedule(dynamic, 8)
    for (long s = 0; s < count; ++s) {
      touched.assign(1, static_cast<Vertex>(s));
      dist[s] = 0;
      for (std::size_t head = 0; head < touched.size(); ++head) {
        const Vertex u = touched[head];
        if (dist[u] == r) continue;
        for (Vertex v : g.neighbors(u))
          if (dist[v] == kUnreachable) {
            dist[v] = dist[u] + 1;
            touched.push_back(v);
          }
      }
      auto& out = adj[s];
      out.assign(touched.begin() + 1, touched.end());
      std::sort(out.begin(), out.end());
      for (Vertex v : touched) dist[v] = kUnreachable;
    }
  }
  return Graph::from_adjacency(std::move(adj));
}

std::vector<Hop> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
  std::vector<char> everything(g.size(), 1);
  return bfs_within(g, sources, everything);
}

std::vector<Hop> bfs_within(const Graph& g, std::span<const Vertex> sources,
                            const std::vector<char>& inside, Hop max_depth) {
  std::vector<Hop> dist(g.size(), kUnreachable);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= g.size()) throw std::out_of_range("BFS source out of range");
    if (inside[s] && dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= max_depth) continue;
    for (Vertex v : g.neighbors(u))
      if (inside[v] && dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

std::vector<Vertex> greedy_max_independent_set(const Graph& g, std::span<const Vertex> within) {
  std::vector<Vertex> order(within.begin(), within.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<char> blocked(g.size(), 0);
  std::vector<Vertex> chosen;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    blocked[v] = 1;
    for (Vertex w : g.neighbors(v)) blocked[w] = 1;
  }
  return chosen;
}

bool Coloring::is_total() const {
  return std::all_of(colors.begin(), colors.end(),
                     [&](Color c) { return c != kNoColor && c <= palette; });
}

std::size_t Coloring::distinct_colors() const {
  std::vector<Color> used(colors);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used.size() - (used.empty() || used.front() != kNoColor ? 0 : 1);
}

std::vector<MonochromaticComponent> monochromatic_components(const Graph& g, const Coloring& coloring,
                                                             std::span<const Vertex> on) {
  const std::size_t n = g.size();
  if (coloring.colors.size() != n) throw std::invalid_argument("coloring size does not match graph");
  std::vector<char> inside(n, 0);
  for (Vertex v : on) {
    if (v >= n) throw std::out_of_range("vertex out of range");
    if (coloring.colors[v] == kNoColor)
      throw std::invalid_argument("vertex " + std::to_string(v) + " is uncolored");
    inside[v] = 1;
  }

  std::vector<MonochromaticComponent> components;
  std::vector<char> visited(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (!inside[s] || visited[s]) continue;
    MonochromaticComponent comp;
    comp.color = coloring.colors[s];
    std::vector<Vertex> queue{s};
    visited[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Vertex w : g.neighbors(queue[head]))
        if (inside[w] && !visited[w] && coloring.colors[w] == comp.color) {
          visited[w] = 1;
          queue.push_back(w);
        }
    std::sort(queue.begin(), queue.end());
    comp.vertices = std::move(queue);
    components.push_back(std::move(comp));
  }

  // One BFS in the full graph per (component, member) pair.
  std::vector<std::pair<std::size_t, Vertex>> tasks;
  for (std::size_t c = 0; c < components.size(); ++c)
    if (components[c].vertices.size() > 1)
      for (Vertex v : components[c].vertices) tasks.emplace_back(c, v);
  std::vector<Hop> eccentricity(tasks.size(), 0);

  const auto task_count = static_cast<long>(tasks.size());
#pragma omp parallel
  {
    std::vector<Hop> dist(n);
    std::vector<char> wanted(n, 0);
#pragma omp for schedule(dynamic, 4)
    for (long t = 0; t < task_count; ++t) {
      const auto& members = components[tasks[t].first].vertices;
      for (Vertex v : members) wanted[v] = 1;
      eccentricity[t] = farthest_wanted(g, tasks[t].second, wanted, members.size(), dist);
      for (Vertex v : members) wanted[v] = 0;
    }
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& comp = components[tasks[t].first];
    comp.diameter = std::max(comp.diameter, eccentricity[t]);
  }
  return components;
}

Hop coloring_diameter(const Graph& g, const Coloring& coloring, std::span<const Vertex> on) {
  Hop best = 0;
  for (const auto& comp : monochromatic_components(g, coloring, on)) best = std::max(best, comp.diameter);
  return best;
}

Hop coloring_diameter(const Graph& g, const Coloring& coloring) {
  const auto all = all_vertices(g);
  return coloring_diameter(g, coloring, all);
}

}  // namespace weakdiam
