#include "weakdiam/serial.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace weakdiam::serial {

namespace {

bool share_point(const PointSet& a, const PointSet& b) {
  for (PointId p : a)
    if (std::binary_search(b.begin(), b.end(), p)) return true;
  return false;
}

std::vector<Hop> bfs(const Graph& g, Vertex source, Hop limit) {
  std::vector<Hop> dist(g.size(), kUnreachable);
  std::queue<Vertex> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    if (dist[u] == limit) continue;
    for (Vertex v : g.neighbors(u))
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
  }
  return dist;
}

bool nested_or_disjoint(const PointSet& a, const PointSet& b) {
  std::vector<PointId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.empty() || common.size() == a.size() || common.size() == b.size();
}

}  // namespace

Graph intersection_graph(const ObjectSystem& system) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < system.size(); ++i)
    for (Vertex j = i + 1; j < system.size(); ++j)
      if (share_point(system.object(i), system.object(j))) edges.emplace_back(i, j);
  return Graph::from_edges(system.size(), edges);
}

Graph graph_power(const Graph& g, Hop r) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < g.size(); ++u) {
    const auto dist = bfs(g, u, kUnreachable);
    for (Vertex v = u + 1; v < g.size(); ++v)
      if (dist[v] <= r) edges.emplace_back(u, v);
  }
  return Graph::from_edges(g.size(), edges);
}

Hop coloring_diameter(const Graph& g, const Coloring& coloring) {
  const std::size_t n = g.size();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u))
      if (coloring.colors[u] == coloring.colors[v]) parent[find(u)] = find(v);
  std::vector<std::vector<Vertex>> groups(n);
  for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
  Hop worst = 0;
  for (const auto& group : groups)
    for (Vertex u : group) {
      const auto dist = bfs(g, u, kUnreachable);
      for (Vertex v : group) worst = std::max(worst, dist[v]);
    }
  return worst;
}

ObjectSystem shallow_union_system(const ObjectSystem& system, Hop t) {
  const Graph g = serial::intersection_graph(system);
  std::vector<PointSet> unions;
  for (Vertex i = 0; i < system.size(); ++i) {
    const auto dist = bfs(g, i, t);
    PointSet merged;
    for (Vertex j = 0; j < system.size(); ++j)
      if (dist[j] <= t) merged = set_union(merged, system.object(j));
    unions.push_back(std::move(merged));
  }
  return ObjectSystem(system.space_ptr(), std::move(unions));
}

std::optional<PointId> lebesgue_failure(const Space& space, const Cover& cover, double r) {
  for (PointId x = 0; x < space.size(); ++x) {
    std::vector<PointId> around;
    for (PointId y = 0; y < space.size(); ++y)
      if (space.distance(x, y) <= r) around.push_back(y);
    bool inside = false;
    for (std::size_t f = 0; f < cover.families.size() && !inside; ++f)
      for (const auto& cell : cover.families[f]) {
        inside = std::all_of(around.begin(), around.end(), [&](PointId y) { return cell.members.contains(y); });
        if (inside) break;
      }
    if (!inside) return x;
  }
  return std::nullopt;
}

LaminarReport verify_laminar_pairwise(const Web& web, std::size_t family) {
  std::vector<ElementId> ids;
  for (ElementId id = 0; id < web.size(); ++id) {
    const auto& e = web.element(id);
    if (e.family == family && !e.trimmed.empty()) ids.push_back(id);
  }
  LaminarReport report;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      if (!nested_or_disjoint(web.element(ids[a]).trimmed, web.element(ids[b]).trimmed)) {
        report.violation = std::make_pair(ids[a], ids[b]);
        return report;
      }
  return report;
}

}  // namespace weakdiam::serial
