#pragma once

#include <optional>

#include "weakdiam/cover.hpp"
#include "weakdiam/graph.hpp"
#include "weakdiam/objects.hpp"
#include "weakdiam/web.hpp"

// Straightforward single-threaded versions of the parallel kernels. They share
// no code with the fast paths and serve as test oracles and bench baselines.
namespace weakdiam::serial {

// Pairwise set intersection tests.
Graph intersection_graph(const ObjectSystem& system);

// One full BFS per vertex.
Graph graph_power(const Graph& g, Hop r);

// Union-find components per color, all-pairs BFS inside each component.
Hop coloring_diameter(const Graph& g, const Coloring& coloring);

// Hop-limited BFS per object, unions merged in order.
ObjectSystem shallow_union_system(const ObjectSystem& system, Hop t);

// Every ball(x, r) against every cell; first center with no containing cell.
std::optional<PointId> lebesgue_failure(const Space& space, const Cover& cover, double r);

// All pairs of nonempty trimmed sets of one family, singletons included.
LaminarReport verify_laminar_pairwise(const Web& web, std::size_t family);

}  // namespace weakdiam::serial
