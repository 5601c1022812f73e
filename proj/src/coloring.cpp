#include "weakdiam/coloring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace weakdiam {

BigInt w_bound(std::size_t k) {
  BigInt w = 0;
  for (std::size_t j = 1; j <= k; ++j) w = BigInt(j) * (2 * BigInt(5 * j + 1) * (w + 2) + 13);
  return w;
}

std::pair<std::uint64_t, std::uint64_t> narrow_diameter_bounds(std::uint64_t k, std::uint64_t a,
                                                               std::uint64_t l) {
  if (k == 0) throw std::invalid_argument("narrow sets need k >= 1");
  return {2 * a * k + k - 1, k * (2 * a + 2 * l + 3)};
}

namespace {

struct Context {
  const TreeDecomposition& td;
  const Graph& input;
  std::vector<std::vector<std::size_t>> tree_adjacency;
  std::vector<std::vector<std::size_t>> nodes_of;  // vertex -> nodes with it in the bag
  std::vector<Color> colors;
  ColoringStats stats;
  std::vector<FrameRegions>* trace = nullptr;
};

struct Measure {
  std::size_t k;
  std::size_t size;
};

std::vector<Vertex> members(const std::vector<char>& mask) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

// Components of the allowed tree nodes outside `removed`, each ascending,
// ordered by lowest node id.
std::vector<std::vector<std::size_t>> tree_components(const Context& ctx, const std::vector<char>& allowed,
                                                      const std::vector<char>& removed) {
  const std::size_t count = ctx.td.nodes.size();
  std::vector<char> seen(count, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < count; ++start) {
    if (!allowed[start] || removed[start] || seen[start]) continue;
    std::vector<std::size_t> component{start};
    seen[start] = 1;
    for (std::size_t i = 0; i < component.size(); ++i)
      for (std::size_t next : ctx.tree_adjacency[component[i]])
        if (allowed[next] && !removed[next] && !seen[next]) {
          seen[next] = 1;
          component.push_back(next);
        }
    std::sort(component.begin(), component.end());
    out.push_back(std::move(component));
  }
  return out;
}

std::vector<Vertex> bag_vertices_in(const Context& ctx, const std::vector<std::size_t>& nodes,
                                    const std::vector<char>& in_h) {
  std::vector<char> mark(in_h.size(), 0);
  for (std::size_t x : nodes)
    for (Vertex v : ctx.td.nodes[x].bag)
      if (in_h[v]) mark[v] = 1;
  return members(mark);
}

void check_measure(const Measure& parent, const Measure& child, bool split) {
  const bool decreases = child.k < parent.k || (child.k == parent.k && child.size < parent.size);
  const bool split_ok = split && child.k == parent.k && child.size <= parent.size;
  if (!decreases && !split_ok) throw std::logic_error("recursion measure did not decrease");
}

void extend(Context& ctx, const Graph& g, const std::vector<Vertex>& h, std::size_t root,
            const std::vector<char>& allowed, const std::vector<Vertex>& z, std::size_t k, std::size_t depth) {
  if (h.empty()) return;
  ++ctx.stats.frames;
  ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
  const std::size_t n = g.size();
  const Measure here{k, h.size()};

  std::vector<char> in_h(n, 0);
  for (Vertex v : h) in_h[v] = 1;
  std::vector<Vertex> root_hits;
  for (Vertex v : ctx.td.nodes[root].bag)
    if (in_h[v]) root_hits.push_back(v);

  if (root_hits.empty()) {
    if (!z.empty()) throw std::logic_error("precolored vertices with an empty root bag");
    std::vector<char> removed(ctx.td.nodes.size(), 0);
    removed[root] = 1;
    for (const auto& component : tree_components(ctx, allowed, removed)) {
      std::vector<Vertex> part = bag_vertices_in(ctx, component, in_h);
      if (part.empty()) continue;
      std::vector<char> part_mask(n, 0);
      for (Vertex v : part) part_mask[v] = 1;
      std::size_t new_root = component.front();
      for (std::size_t x : component)
        if (std::any_of(ctx.td.nodes[x].bag.begin(), ctx.td.nodes[x].bag.end(),
                        [&](Vertex v) { return part_mask[v] != 0; })) {
          new_root = x;
          break;
        }
      check_measure(here, {k, part.size()}, true);
      std::vector<char> sub_allowed(ctx.td.nodes.size(), 0);
      for (std::size_t x : component) sub_allowed[x] = 1;
      extend(ctx, g, part, new_root, sub_allowed, {}, k, depth + 1);
    }
    return;
  }

  if (k == 0) {
    ++ctx.stats.narrowness_violations;
    for (Vertex v : h)
      if (ctx.colors[v] == kNoColor) ctx.colors[v] = 1;
    return;
  }

  // Z grows to every vertex within H-distance 2 of the root bag.
  const auto to_root = bfs_within(g, root_hits, in_h, 2);
  std::vector<char> in_z(n, 0);
  for (Vertex v : z) {
    if (to_root[v] == kUnreachable)
      throw std::invalid_argument("precolored vertex " + std::to_string(v) +
                                  " is farther than 2 from the root bag inside H");
    in_z[v] = 1;
  }
  std::vector<Vertex> z_full;
  for (Vertex v : h)
    if (to_root[v] != kUnreachable) {
      z_full.push_back(v);
      if (!in_z[v]) {
        ctx.colors[v] = 1;
        ++ctx.stats.completed_vertices;
      }
    }

  const std::size_t node_count = ctx.td.nodes.size();
  std::vector<char> in_s(node_count, 0);
  for (Vertex v : z_full)
    for (std::size_t x : ctx.nodes_of[v])
      if (allowed[x]) in_s[x] = 1;
  std::vector<std::size_t> s_nodes;
  for (std::size_t x = 0; x < node_count; ++x)
    if (in_s[x]) s_nodes.push_back(x);

  std::vector<char> in_vprime(n, 0), in_s_bags(n, 0);
  for (std::size_t x : s_nodes)
    for (Vertex v : ctx.td.nodes[x].bag) {
      in_s_bags[v] = 1;
      if (in_h[v]) in_vprime[v] = 1;
    }
  const std::vector<Vertex> vprime = members(in_vprime);

  const std::vector<char> everywhere(n, 1);
  const auto to_z = bfs_within(g, z_full, everywhere, 2);
  std::vector<Vertex> v1, v2;
  for (Vertex v : vprime) {
    if (to_z[v] != kUnreachable) {
      v1.push_back(v);
      if (ctx.colors[v] == kNoColor) ctx.colors[v] = 1;
    } else {
      v2.push_back(v);
    }
  }

  if (!v2.empty()) {
    std::vector<char> in_v2(n, 0);
    for (Vertex v : v2) in_v2[v] = 1;
    std::vector<std::vector<Vertex>> adjacency(n);
    for (Vertex u = 0; u < n; ++u) {
      if (!in_s_bags[u]) continue;
      for (Vertex v : g.neighbors(u))
        if (in_s_bags[v]) adjacency[u].push_back(v);
    }
    const Hop reach = static_cast<Hop>(5 * k + 1);
    for (Vertex u : v2) {
      const auto near = bfs_within(g, std::span<const Vertex>(&u, 1), everywhere, reach);
      for (std::size_t x : ctx.nodes_of[u]) {
        if (!in_s[x]) continue;
        for (Vertex v : ctx.td.nodes[x].bag)
          if (v > u && in_v2[v] && near[v] != kUnreachable && !g.has_edge(u, v)) {
            adjacency[u].push_back(v);
            adjacency[v].push_back(u);
          }
      }
    }
    Graph g2 = Graph::from_adjacency(std::move(adjacency));
    for (Vertex u : v2)
      for (Vertex v : g2.neighbors(u))
        if (u < v && in_v2[v] && !g.has_edge(u, v)) ++ctx.stats.auxiliary_edges;
    check_measure(here, {k - 1, v2.size()}, false);
    extend(ctx, g2, v2, root, in_s, {}, k - 1, depth + 1);
  }

  const auto to_vprime = bfs_within(g, vprime, in_h, 2);
  std::vector<Vertex> v3, v4;
  for (Vertex v : h) {
    if (to_vprime[v] == 1) {
      v3.push_back(v);
      ctx.colors[v] = 1;
    } else if (to_vprime[v] == 2) {
      v4.push_back(v);
      ctx.colors[v] = 2;
    }
  }

  const bool traced = ctx.trace && &g == &ctx.input;
  const std::size_t trace_slot = traced ? ctx.trace->size() : 0;
  if (traced) ctx.trace->push_back(FrameRegions{h, vprime, v1, v2, v3, v4, {}});

  std::vector<char> in_precolored(n, 0);
  for (Vertex v : vprime) in_precolored[v] = 1;
  for (Vertex v : v3) in_precolored[v] = 1;
  for (Vertex v : v4) in_precolored[v] = 1;

  for (const auto& component : tree_components(ctx, allowed, in_s)) {
    std::vector<Vertex> part = bag_vertices_in(ctx, component, in_h);
    if (part.empty()) continue;
    std::size_t child_root = node_count;
    for (std::size_t x : component)
      for (std::size_t y : ctx.tree_adjacency[x])
        if (in_s[y]) {
          if (child_root != node_count && child_root != x)
            throw std::logic_error("tree component touches S at two nodes");
          child_root = x;
        }
    if (child_root == node_count) throw std::logic_error("tree component detached from S");
    std::vector<Vertex> child_z;
    for (Vertex v : part)
      if (in_precolored[v]) child_z.push_back(v);
    if (traced) ctx.trace->at(trace_slot).children.push_back(part);
    check_measure(here, {k, part.size()}, false);
    extend(ctx, g, part, child_root, allowed, child_z, k, depth + 1);
  }
}

}  // namespace

Coloring extend_two_coloring(const RecursionFrame& frame, const Graph& g, const TreeDecomposition& td,
                             const ColoringOptions& options) {
  const std::size_t n = g.size();
  const std::size_t node_count = td.nodes.size();
  if (frame.H.empty()) {
    if (!frame.Z.empty()) throw std::invalid_argument("Z must be a subset of H");
    Coloring empty{std::vector<Color>(n, kNoColor), 2};
    if (options.stats) *options.stats = {};
    return empty;
  }
  if (frame.root >= node_count) throw std::invalid_argument("frame root is not a tree node");
  if (!frame.allowed.empty() && frame.allowed.size() != node_count)
    throw std::invalid_argument("allowed mask must have one entry per tree node");
  std::vector<char> allowed = frame.allowed.empty() ? std::vector<char>(node_count, 1) : frame.allowed;
  if (!allowed[frame.root]) throw std::invalid_argument("frame root is outside the allowed nodes");
  if (!std::is_sorted(frame.H.begin(), frame.H.end()) ||
      std::adjacent_find(frame.H.begin(), frame.H.end()) != frame.H.end() || frame.H.back() >= n)
    throw std::invalid_argument("H must be ascending vertex ids of the graph");
  if (frame.psi.size() != frame.Z.size()) throw std::invalid_argument("psi must color exactly Z");

  Context ctx{td, g, std::vector<std::vector<std::size_t>>(node_count), std::vector<std::vector<std::size_t>>(n),
              std::vector<Color>(n, kNoColor), {}, options.trace};
  for (std::size_t x = 0; x < node_count; ++x) {
    const std::size_t p = td.nodes[x].parent;
    if (p != kNoParent) {
      ctx.tree_adjacency[x].push_back(p);
      ctx.tree_adjacency[p].push_back(x);
    }
    for (Vertex v : td.nodes[x].bag) {
      if (v >= n) throw std::invalid_argument("bag names a vertex outside the graph");
      ctx.nodes_of[v].push_back(x);
    }
  }
  for (Vertex v : frame.H)
    if (std::none_of(ctx.nodes_of[v].begin(), ctx.nodes_of[v].end(), [&](std::size_t x) { return allowed[x]; }))
      throw std::invalid_argument("vertex " + std::to_string(v) + " of H lies in no allowed bag");
  for (std::size_t i = 0; i < frame.Z.size(); ++i) {
    if (!std::binary_search(frame.H.begin(), frame.H.end(), frame.Z[i]))
      throw std::invalid_argument("Z must be a subset of H");
    if (frame.psi[i] != 1 && frame.psi[i] != 2) throw std::invalid_argument("psi uses colors 1 and 2 only");
    ctx.colors[frame.Z[i]] = frame.psi[i];
  }
  std::vector<Vertex> z = frame.Z;
  std::sort(z.begin(), z.end());

  extend(ctx, g, frame.H, frame.root, allowed, z, frame.k, 0);
  for (Vertex v : frame.H)
    if (ctx.colors[v] == kNoColor) throw std::logic_error("vertex " + std::to_string(v) + " left uncolored");
  if (options.stats) *options.stats = ctx.stats;
  return Coloring{std::move(ctx.colors), 2};
}

Coloring two_color(const Graph& g, const TreeDecomposition& td, std::size_t k, const ColoringOptions& options) {
  const auto report = verify_tree_decomposition(g, td);
  if (!report.valid()) throw std::invalid_argument("not a tree decomposition: " + report.describe());
  RecursionFrame frame;
  frame.H = all_vertices(g);
  frame.root = td.root;
  frame.k = k;
  Coloring result = extend_two_coloring(frame, g, td, options);
  if (options.stats) options.stats->k_below_domination = td.k > k;
  return result;
}

std::string WeakDiameterReport::describe() const {
  std::ostringstream out;
  out << "diameter " << diameter << (passed() ? " <= " : " > ") << bound;
  if (worst) {
    out << "; color " << worst->color << " component of diameter " << worst->diameter << ":";
    for (Vertex v : worst->vertices) out << ' ' << v;
  }
  return out.str();
}

WeakDiameterReport verify_weak_diameter(const Graph& g, const Coloring& coloring, std::uint64_t bound) {
  WeakDiameterReport report;
  report.bound = bound;
  const auto everything = all_vertices(g);
  auto components = monochromatic_components(g, coloring, everything);
  const MonochromaticComponent* worst = nullptr;
  for (const auto& c : components)
    if (!worst || c.diameter > worst->diameter) worst = &c;
  if (worst) report.diameter = worst->diameter;
  if (worst && worst->diameter > bound) report.worst = *worst;
  return report;
}

}  // namespace weakdiam
