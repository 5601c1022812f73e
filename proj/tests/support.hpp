#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <random>
#include <vector>

#include "weakdiam/decomp.hpp"
#include "weakdiam/graph.hpp"
#include "weakdiam/metric.hpp"
#include "weakdiam/objects.hpp"
#include "weakdiam/spacefill.hpp"
#include "weakdiam/web.hpp"

namespace testing {

using namespace weakdiam;

inline std::shared_ptr<const Space> random_cloud(std::mt19937_64& rng, MetricKind kind, std::size_t dim,
                                                 std::size_t count, double extent) {
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::vector<double> flat(count * dim);
  for (auto& c : flat) c = coord(rng);
  return std::make_shared<const Space>(Space::from_coordinates(kind, dim, std::move(flat)));
}

inline std::shared_ptr<const Space> line_space(std::vector<double> xs) {
  return std::make_shared<const Space>(Space::from_coordinates(MetricKind::kL2, 1, std::move(xs)));
}

// Objects are balls of random radius around random points.
inline ObjectSystem random_balls(std::mt19937_64& rng, std::shared_ptr<const Space> space, std::size_t count,
                                 double rmin, double rmax) {
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(space->size() - 1));
  std::uniform_real_distribution<double> radius(rmin, rmax);
  std::vector<PointSet> sets;
  for (std::size_t i = 0; i < count; ++i) sets.push_back(ball(*space, pick(rng), radius(rng)));
  return ObjectSystem(space, std::move(sets));
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (edge(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

// Plain all-pairs hop distances (Floyd-Warshall).
inline std::vector<std::vector<std::uint32_t>> all_pairs(const Graph& g) {
  const std::size_t n = g.size();
  constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max() / 4;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (Vertex u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (Vertex v : g.neighbors(u)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Max distance (in g) within each monochromatic component of g[on], via
// Floyd-Warshall and a flood fill.
inline std::uint32_t brute_coloring_diameter(const Graph& g, const std::vector<Color>& colors) {
  const auto d = all_pairs(g);
  const std::size_t n = g.size();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u))
        if (comp[v] < 0 && colors[v] == colors[u]) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  std::uint32_t worst = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (comp[u] == comp[v]) worst = std::max(worst, d[u][v]);
  return worst;
}

// One family's share of a system: objects caught first by that family.
struct Part {
  std::size_t family = 0;
  std::vector<std::size_t> ids;
  ObjectSystem objects;
  Graph graph;
  TreeDecomposition td;
};

// Lowest catching family per object, then a decomposition per nonempty part.
inline std::vector<Part> family_parts(const ObjectSystem& system, const Web& web) {
  std::vector<std::vector<std::size_t>> ids(web.family_count());
  std::vector<std::vector<ElementId>> caught(web.family_count());
  for (std::size_t i = 0; i < system.size(); ++i)
    for (std::size_t f = 0; f < web.family_count(); ++f)
      if (const auto hit = catch_in_family(web, f, system.object(i), web.catch_constant())) {
        ids[f].push_back(i);
        caught[f].push_back(*hit);
        break;
      }
  std::vector<Part> parts;
  for (std::size_t f = 0; f < web.family_count(); ++f) {
    if (ids[f].empty()) continue;
    Part part;
    part.family = f;
    part.ids = ids[f];
    part.objects = system.subsystem(ids[f]);
    part.graph = intersection_graph(part.objects);
    part.td = build_tree_decomposition(part.objects, web, caught[f]);
    bag_domination(part.td, part.graph);
    parts.push_back(std::move(part));
  }
  return parts;
}

// Tree decomposition axioms checked directly: tree shape, vertex and edge
// coverage, connected holder sets (flood fill over tree edges).
inline bool brute_force_decomposition(const Graph& g, const TreeDecomposition& td) {
  const std::size_t m = td.nodes.size();
  if (td.root >= m || td.nodes[td.root].parent != kNoParent) return false;
  std::vector<std::vector<std::size_t>> adj(m);
  std::size_t edges = 0;
  for (std::size_t x = 0; x < m; ++x) {
    if (x == td.root) continue;
    const std::size_t p = td.nodes[x].parent;
    if (p >= m) return false;
    adj[x].push_back(p);
    adj[p].push_back(x);
    ++edges;
  }
  auto flood = [&](std::size_t start, const std::vector<char>& keep) {
    std::vector<char> seen(m, 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x])
        if (!seen[y] && keep[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    return count;
  };
  if (edges + 1 != m || flood(td.root, std::vector<char>(m, 1)) != m) return false;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<char> holds(m, 0);
    std::size_t count = 0, first = m;
    for (std::size_t x = 0; x < m; ++x)
      if (std::find(td.nodes[x].bag.begin(), td.nodes[x].bag.end(), v) != td.nodes[x].bag.end()) {
        holds[x] = 1;
        ++count;
        if (first == m) first = x;
      }
    if (count == 0 || flood(first, holds) != count) return false;
    for (Vertex u : g.neighbors(v)) {
      bool covered = false;
      for (std::size_t x = 0; x < m && !covered; ++x) {
        const auto& bag = td.nodes[x].bag;
        covered = std::find(bag.begin(), bag.end(), u) != bag.end() && std::find(bag.begin(), bag.end(), v) != bag.end();
      }
      if (!covered) return false;
    }
  }
  return true;
}

// Path decomposition of a path graph: node i holds {i, i+1}, node 0 is the root.
inline TreeDecomposition path_decomposition(std::size_t n) {
  TreeDecomposition td;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    TreeNode& node = td.nodes.emplace_back();
    node.parent = i == 0 ? kNoParent : i - 1;
    node.bag = {static_cast<Vertex>(i), static_cast<Vertex>(i + 1)};
  }
  td.link_children();
  return td;
}

// Random queries whose exact counts stay within `limit` candidates on both
// sides of the shallow-union inequality. Gives up after 200 draws per query.
inline std::vector<SpacefillQuery> pick_lemcons_queries(std::mt19937_64& rng, const ObjectSystem& system, Hop t,
                                                        std::size_t count, std::size_t limit) {
  const ObjectSystem unions = shallow_union_system(system, t);
  const auto union_diameters = object_diameters(unions);
  const auto diameters = object_diameters(system);
  double biggest = 0.0;
  for (double d : union_diameters) biggest = std::max(biggest, d);
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(system.space().size() - 1));
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  const double shrink = 2.0 * static_cast<double>(t) + 2.0;
  std::vector<SpacefillQuery> out;
  for (std::size_t tries = 0; out.size() < count && tries < 200 * count; ++tries) {
    const SpacefillQuery q{pick(rng), unit(rng) * biggest, unit(rng) * biggest};
    if (spacefill_candidates(unions, union_diameters, q).size() > limit) continue;
    if (spacefill_candidates(system, diameters, {q.x, q.r + q.s, q.s / shrink}).size() > limit) continue;
    out.push_back(q);
  }
  return out;
}

// Exact roundness by brute force: every critical radius and every midpoint
// between consecutive critical radii, each tested against every candidate v'.
inline bool brute_round(const Space& space, const PointSet& s, double eta) {
  const double diam = set_diameter(space, s);
  if (diam == 0.0) return true;
  std::vector<double> critical{diam};
  for (PointId v : s)
    for (PointId y = 0; y < space.size(); ++y) {
      const double a = space.distance(v, y);
      if (a > 0.0 && a <= diam) critical.push_back(a);
      if (a > 0.0 && a / eta <= diam) critical.push_back(a / eta);
    }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  std::vector<double> radii{critical.front() / 2.0};
  for (std::size_t i = 0; i < critical.size(); ++i) {
    radii.push_back(critical[i]);
    if (i + 1 < critical.size()) radii.push_back((critical[i] + critical[i + 1]) / 2.0);
  }
  for (PointId v : s)
    for (double r : radii) {
      bool found = false;
      for (PointId w : s) {
        bool inside = true;
        for (PointId y = 0; y < space.size() && inside; ++y)
          if (space.distance(w, y) <= eta * r) inside = s.contains(y) && space.distance(v, y) <= r;
        if (inside) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

}  // namespace testing
