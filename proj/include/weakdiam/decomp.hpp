#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weakdiam/graph.hpp"
#include "weakdiam/objects.hpp"
#include "weakdiam/web.hpp"

namespace weakdiam {

inline constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

struct TreeNode {
  std::optional<ElementId> element;  // empty for the root (the whole space)
  PointSet points;                   // trimmed web set this node stands for
  std::size_t parent = kNoParent;
  std::vector<std::size_t> children;
  std::vector<Vertex> bag;         // ascending object ids
  std::vector<Vertex> dominators;  // filled by bag_domination
};

struct TreeDecomposition {
  std::vector<TreeNode> nodes;
  std::size_t root = 0;
  std::size_t k = 0;                   // max |dominators| once measured
  std::vector<std::size_t> top_node;   // per object: the deepest node containing it

  // Rebuilds children lists from parent links.
  void link_children();
};

// Tree whose nodes are the distinct trimmed web elements catching the given
// objects (caught_by[i] for object i), plus the root X. Parent = minimal strict
// superset. Bag of W = objects S meeting W with W a descendant-or-self of the
// deepest node containing S. Throws std::logic_error if the chosen sets are not
// laminar.
TreeDecomposition build_tree_decomposition(const ObjectSystem& part, const Web& web,
                                           const std::vector<ElementId>& caught_by);

// Convenience: catches every object in `family` first. Throws
// std::invalid_argument naming the first object the family does not catch.
TreeDecomposition build_tree_decomposition(const ObjectSystem& part, const Web& web, std::size_t family,
                                           double catch_constant);

// Greedy maximal independent set per bag; returns k = max |D|.
std::size_t bag_domination(TreeDecomposition& td, const Graph& part_graph);

struct DecompositionReport {
  std::optional<std::string> violation;
  bool valid() const { return !violation; }
  std::string describe() const { return violation.value_or("valid"); }
};

// Tree well-formedness, edge coverage, connected nonempty vertex subtrees and,
// when present, per-bag dominators that are independent and dominating.
DecompositionReport verify_tree_decomposition(const Graph& g, const TreeDecomposition& td);

// One node per line, indented by depth: id, parent, |bag|, |D|.
std::string export_tree(const TreeDecomposition& td);

}  // namespace weakdiam
