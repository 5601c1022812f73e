#include "weakdiam/decomp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace weakdiam {

void TreeDecomposition::link_children() {
  for (auto& node : nodes) node.children.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent != kNoParent) nodes.at(nodes[i].parent).children.push_back(i);
}

TreeDecomposition build_tree_decomposition(const ObjectSystem& part, const Web& web,
                                           const std::vector<ElementId>& caught_by) {
  if (caught_by.size() != part.size()) throw std::invalid_argument("need one catching element per object");
  const auto point_count = static_cast<PointId>(web.space().size());

  TreeDecomposition td;
  std::map<PointSet, std::size_t> node_of;
  td.nodes.emplace_back().points = PointSet::range(point_count);
  node_of.emplace(td.nodes.front().points, 0);
  for (std::size_t i = 0; i < part.size(); ++i) {
    const WebElement& w = web.element(caught_by[i]);
    if (!part.object(i).is_subset_of(w.trimmed))
      throw std::invalid_argument("object " + std::to_string(i) + " is not inside its catching element");
    if (node_of.contains(w.trimmed)) continue;
    node_of.emplace(w.trimmed, td.nodes.size());
    TreeNode& node = td.nodes.emplace_back();
    node.element = caught_by[i];
    node.points = w.trimmed;
  }

  // Parent: smallest strictly larger node through the first point.
  std::vector<std::vector<std::size_t>> containing(point_count);
  for (std::size_t id = 1; id < td.nodes.size(); ++id)
    for (PointId p : td.nodes[id].points) containing[p].push_back(id);
  for (std::size_t id = 1; id < td.nodes.size(); ++id) {
    TreeNode& node = td.nodes[id];
    std::size_t best = 0;
    for (std::size_t other : containing[node.points.front()]) {
      if (other == id) continue;
      const std::size_t size = td.nodes[other].points.size();
      if (size == node.points.size())
        throw std::logic_error("tree nodes " + std::to_string(id) + " and " + std::to_string(other) +
                               " overlap without nesting");
      if (size > node.points.size() && (best == 0 || size < td.nodes[best].points.size())) best = other;
    }
    if (!node.points.is_subset_of(td.nodes[best].points))
      throw std::logic_error("tree node " + std::to_string(id) + " is not nested in its parent " +
                             std::to_string(best));
    node.parent = best;
  }
  td.link_children();

  // Deepest node containing each object, walking down from the root.
  td.top_node.resize(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) {
    const PointSet& s = part.object(i);
    std::size_t current = td.root;
    while (true) {
      std::size_t next = kNoParent;
      for (std::size_t child : td.nodes[current].children) {
        if (!td.nodes[child].points.contains(s.front())) continue;
        if (next != kNoParent) throw std::logic_error("sibling tree nodes overlap");
        next = child;
      }
      if (next == kNoParent || !s.is_subset_of(td.nodes[next].points)) break;
      current = next;
    }
    td.top_node[i] = current;
  }

  // Bags: every descendant-or-self of the top node that meets the object.
  for (std::size_t i = 0; i < part.size(); ++i) {
    std::vector<std::size_t> stack{td.top_node[i]};
    while (!stack.empty()) {
      const std::size_t id = stack.back();
      stack.pop_back();
      TreeNode& node = td.nodes[id];
      if (id == td.root || node.points.intersects(part.object(i))) node.bag.push_back(static_cast<Vertex>(i));
      stack.insert(stack.end(), node.children.begin(), node.children.end());
    }
  }
  return td;
}

TreeDecomposition build_tree_decomposition(const ObjectSystem& part, const Web& web, std::size_t family,
                                           double catch_constant) {
  std::vector<ElementId> caught_by(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) {
    const auto hit = catch_in_family(web, family, part.object(i), catch_constant);
    if (!hit)
      throw std::invalid_argument("object " + std::to_string(i) + " is not caught by family " +
                                  std::to_string(family));
    caught_by[i] = *hit;
  }
  return build_tree_decomposition(part, web, caught_by);
}

std::size_t bag_domination(TreeDecomposition& td, const Graph& part_graph) {
  td.k = 0;
  for (auto& node : td.nodes) {
    node.dominators = greedy_max_independent_set(part_graph, node.bag);
    td.k = std::max(td.k, node.dominators.size());
  }
  return td.k;
}

DecompositionReport verify_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  auto fail = [](std::string message) { return DecompositionReport{std::move(message)}; };
  const std::size_t count = td.nodes.size();
  if (count == 0) return fail("decomposition has no nodes");
  if (td.root >= count) return fail("root index out of range");
  if (td.nodes[td.root].parent != kNoParent) return fail("root has a parent");

  for (std::size_t i = 0; i < count; ++i) {
    if (i == td.root) continue;
    const std::size_t p = td.nodes[i].parent;
    if (p == kNoParent) return fail("node " + std::to_string(i) + " is a second root");
    if (p >= count || p == i) return fail("node " + std::to_string(i) + " has an invalid parent");
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t cursor = i, steps = 0;
    while (cursor != td.root && steps <= count) {
      cursor = td.nodes[cursor].parent;
      ++steps;
    }
    if (cursor != td.root) return fail("node " + std::to_string(i) + " lies on a parent cycle");
  }
  std::vector<std::vector<std::size_t>> children(count);
  for (std::size_t i = 0; i < count; ++i)
    if (i != td.root) children[td.nodes[i].parent].push_back(i);
  for (std::size_t i = 0; i < count; ++i) {
    auto listed = td.nodes[i].children;
    std::sort(listed.begin(), listed.end());
    if (listed != children[i]) return fail("children of node " + std::to_string(i) + " disagree with parent links");
  }

  std::vector<std::vector<std::size_t>> holders(g.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto& bag = td.nodes[i].bag;
    if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
      return fail("bag of node " + std::to_string(i) + " is not sorted and duplicate-free");
    for (Vertex v : bag) {
      if (v >= g.size()) return fail("bag of node " + std::to_string(i) + " names unknown vertex");
      holders[v].push_back(i);
    }
  }

  for (auto [u, v] : g.edges()) {
    const auto& a = holders[u];
    const auto& b = holders[v];
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty())
      return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
  }

  for (Vertex v = 0; v < g.size(); ++v) {
    if (holders[v].empty()) return fail("vertex " + std::to_string(v) + " is in no bag");
    std::size_t tops = 0;
    for (std::size_t node : holders[v]) {
      const std::size_t p = td.nodes[node].parent;
      if (p == kNoParent || !std::binary_search(td.nodes[p].bag.begin(), td.nodes[p].bag.end(), v)) ++tops;
    }
    if (tops != 1) return fail("bags containing vertex " + std::to_string(v) + " are not connected");
  }

  const bool measured = std::any_of(td.nodes.begin(), td.nodes.end(),
                                    [](const TreeNode& n) { return !n.dominators.empty(); });
  if (measured) {
    std::vector<char> in_bag(g.size(), 0), dominated(g.size(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      const auto& node = td.nodes[i];
      const std::string where = " at node " + std::to_string(i);
      if (node.dominators.size() > td.k) return fail("dominating set larger than k" + where);
      for (Vertex v : node.bag) in_bag[v] = 1;
      for (Vertex d : node.dominators) {
        if (d >= g.size() || !in_bag[d]) return fail("dominator outside the bag" + where);
        dominated[d] = 1;
        for (Vertex w : g.neighbors(d)) dominated[w] = 1;
      }
      for (std::size_t a = 0; a < node.dominators.size(); ++a)
        for (std::size_t b = a + 1; b < node.dominators.size(); ++b)
          if (g.has_edge(node.dominators[a], node.dominators[b])) return fail("dominators not independent" + where);
      for (Vertex v : node.bag)
        if (!dominated[v]) return fail("vertex " + std::to_string(v) + " undominated" + where);
      for (Vertex v : node.bag) in_bag[v] = 0;
      std::fill(dominated.begin(), dominated.end(), 0);
    }
  }
  return {};
}

std::string export_tree(const TreeDecomposition& td) {
  std::ostringstream out;
  out << "# node parent |bag| |D|\n";
  if (td.nodes.empty()) return out.str();
  std::vector<std::pair<std::size_t, std::size_t>> stack{{td.root, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const auto& node = td.nodes[id];
    out << std::string(2 * depth, ' ') << id << ' ';
    if (node.parent == kNoParent) out << '-';
    else out << node.parent;
    out << ' ' << node.bag.size() << ' ' << node.dominators.size() << '\n';
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
  return out.str();
}

}  // namespace weakdiam
