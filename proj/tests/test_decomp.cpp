#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support.hpp"
#include "weakdiam/decomp.hpp"

using namespace weakdiam;

namespace {

// Every D is inside its bag, independent, dominates the bag and has size <= k.
bool dominators_ok(const Graph& g, const TreeDecomposition& td) {
  for (const auto& node : td.nodes) {
    if (node.dominators.size() > td.k) return false;
    for (Vertex d : node.dominators)
      if (!std::binary_search(node.bag.begin(), node.bag.end(), d)) return false;
    for (std::size_t a = 0; a < node.dominators.size(); ++a)
      for (std::size_t b = a + 1; b < node.dominators.size(); ++b)
        if (g.has_edge(node.dominators[a], node.dominators[b])) return false;
    for (Vertex v : node.bag) {
      bool dominated = false;
      for (Vertex d : node.dominators) dominated = dominated || d == v || g.has_edge(d, v);
      if (!dominated) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("single object gives root plus one node") {
  const auto space = testing::line_space({0, 1, 2, 3, 100});
  const Web web = build_web(space, -1, 1);
  const ObjectSystem system(space, {PointSet{1, 2}});
  const TreeDecomposition td = build_tree_decomposition(system, web, 0, web.catch_constant());
  REQUIRE(td.nodes.size() == 2);
  CHECK(td.root == 0);
  CHECK_FALSE(td.nodes[0].element.has_value());
  CHECK(td.nodes[1].parent == 0);
  CHECK(td.nodes[1].bag == std::vector<Vertex>{0});
  CHECK(td.top_node[0] == 1);
  CHECK(verify_tree_decomposition(Graph(1), td).valid());
}

TEST_CASE("objects caught by disjoint elements become sibling leaves") {
  const auto space = testing::line_space({0, 1, 50, 51});
  const Web web = build_web(space, -1, 1);
  const ObjectSystem system(space, {PointSet{0, 1}, PointSet{2, 3}});
  const TreeDecomposition td = build_tree_decomposition(system, web, 0, web.catch_constant());
  REQUIRE(td.nodes.size() == 3);
  CHECK(td.nodes[0].children.size() == 2);
  CHECK(td.nodes[1].bag.size() == 1);
  CHECK(td.nodes[2].bag.size() == 1);
  CHECK(td.nodes[1].bag != td.nodes[2].bag);
  CHECK(td.nodes[0].bag.empty());
}

TEST_CASE("uncaught objects are named") {
  const auto space = testing::line_space({0, 1000});
  const Web web = build_web(space, -1, 0);
  const ObjectSystem system(space, {PointSet{0}, PointSet{0, 1}});
  CHECK_THROWS_WITH_AS(build_tree_decomposition(system, web, 0, web.catch_constant()),
                       doctest::Contains("object 1"), std::invalid_argument);
}

TEST_CASE("bag domination") {
  TreeDecomposition single;
  single.nodes.emplace_back().bag = {0};
  CHECK(bag_domination(single, Graph(1)) == 1);
  CHECK(single.nodes[0].dominators == std::vector<Vertex>{0});

  TreeDecomposition clique;
  clique.nodes.emplace_back().bag = {0, 1, 2, 3};
  const Graph k4 = Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{
                                            {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(bag_domination(clique, k4) == 1);

  TreeDecomposition loose;
  loose.nodes.emplace_back().bag = {0, 1, 2};
  CHECK(bag_domination(loose, Graph(3)) == 3);
}

TEST_CASE("textbook path decomposition") {
  const Graph path = testing::path_graph(8);
  TreeDecomposition td = testing::path_decomposition(8);
  CHECK(verify_tree_decomposition(path, td).valid());
  CHECK(bag_domination(td, path) == 1);
  CHECK(verify_tree_decomposition(path, td).valid());
  CHECK(testing::brute_force_decomposition(path, td));
  const std::string text = export_tree(td);
  CHECK(text.rfind("# node parent |bag| |D|", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
}

TEST_CASE("verifier rejects broken decompositions") {
  const Graph path = testing::path_graph(5);

  TreeDecomposition missing_edge = testing::path_decomposition(5);
  missing_edge.nodes[2].bag = {2};
  const auto a = verify_tree_decomposition(path, missing_edge);
  REQUIRE_FALSE(a.valid());
  CHECK(a.describe().find("2") != std::string::npos);
  CHECK(a.describe().find("3") != std::string::npos);
  CHECK_FALSE(testing::brute_force_decomposition(path, missing_edge));

  TreeDecomposition split = testing::path_decomposition(5);
  split.nodes[1].bag = {2};
  split.nodes[0].bag = {0, 1, 2};
  split.nodes.emplace_back().parent = 3;
  split.nodes.back().bag = {1};
  split.link_children();
  CHECK_FALSE(verify_tree_decomposition(path, split).valid());
  CHECK_FALSE(testing::brute_force_decomposition(path, split));

  TreeDecomposition cycle = testing::path_decomposition(5);
  cycle.nodes[0].parent = 3;
  cycle.link_children();
  CHECK_FALSE(verify_tree_decomposition(path, cycle).valid());

  TreeDecomposition bad_dominators = testing::path_decomposition(5);
  bag_domination(bad_dominators, path);
  bad_dominators.nodes[1].dominators = {1, 2};
  bad_dominators.k = 2;
  CHECK_FALSE(verify_tree_decomposition(path, bad_dominators).valid());

  TreeDecomposition unsorted = testing::path_decomposition(5);
  unsorted.nodes[0].bag = {1, 0};
  CHECK_FALSE(verify_tree_decomposition(path, unsorted).valid());
}

TEST_CASE("web decompositions against the brute-force checker") {
  std::mt19937_64 rng(17);
  std::size_t checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const auto space = testing::random_cloud(rng, trial % 3 == 0 ? MetricKind::kLinf : MetricKind::kL2, n,
                                             n == 1 ? 200 : 400, n == 1 ? 20.0 : 8.0);
    const auto system = testing::random_balls(rng, space, 60, 0.2, 1.5);
    const Web web = build_web(space, -3, 3);
    std::size_t covered = 0;
    for (const auto& part : testing::family_parts(system, web)) {
      covered += part.ids.size();
      const auto report = verify_tree_decomposition(part.graph, part.td);
      CHECK_MESSAGE(report.valid(), report.describe());
      CHECK(testing::brute_force_decomposition(part.graph, part.td));
      CHECK(dominators_ok(part.graph, part.td));
      for (std::size_t i = 0; i < part.objects.size(); ++i) {
        const TreeNode& top = part.td.nodes[part.td.top_node[i]];
        CHECK(part.objects.object(i).is_subset_of(top.points));
        CHECK(std::binary_search(top.bag.begin(), top.bag.end(), static_cast<Vertex>(i)));
        for (std::size_t child : top.children)
          CHECK_FALSE(part.objects.object(i).is_subset_of(part.td.nodes[child].points));
      }
      ++checked;
    }
    CHECK(covered == system.size());
  }
  CHECK(checked >= 20);
}
