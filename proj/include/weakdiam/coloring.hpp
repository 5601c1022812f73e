#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "weakdiam/decomp.hpp"
#include "weakdiam/graph.hpp"

namespace weakdiam {

using BigInt = boost::multiprecision::cpp_int;

// w(0) = 0, w(k) = k(2(5k+1)(w(k-1)+2)+13).
BigInt w_bound(std::size_t k);

// (2ak+k-1, k(2a+2l+3)). Throws std::invalid_argument for k = 0.
std::pair<std::uint64_t, std::uint64_t> narrow_diameter_bounds(std::uint64_t k, std::uint64_t a,
                                                               std::uint64_t l);

// One call of the recursive extension. Vertex sets are ascending ids of the
// ambient graph; tree nodes are indices into the decomposition.
struct RecursionFrame {
  std::vector<Vertex> H;
  std::size_t root = 0;
  std::vector<char> allowed;  // tree-node mask; empty means every node
  std::vector<Vertex> Z;      // precolored, subset of H
  std::vector<Color> psi;     // colors of Z, in {1,2}, parallel to Z
  std::size_t k = 0;
};

// Regions of one frame that ran the main branch on the caller's graph.
struct FrameRegions {
  std::vector<Vertex> H;
  std::vector<Vertex> vprime;
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  std::vector<Vertex> v3;
  std::vector<Vertex> v4;
  std::vector<std::vector<Vertex>> children;  // H_i, one per component of T - S
};

struct ColoringStats {
  std::size_t frames = 0;
  std::size_t max_depth = 0;
  std::size_t narrowness_violations = 0;  // nonempty H reached with k = 0
  std::size_t completed_vertices = 0;     // Z grown to its full radius-2 ball
  std::size_t auxiliary_edges = 0;        // edges added to the G2 graphs
  bool k_below_domination = false;
};

struct ColoringOptions {
  // Receives every main-branch frame that ran on the input graph.
  std::vector<FrameRegions>* trace = nullptr;
  ColoringStats* stats = nullptr;
};

// Extends psi to a {1,2}-coloring of H. The result has one slot per vertex of
// g; vertices outside H stay kNoColor. Throws std::invalid_argument if Z is not
// inside H or reaches beyond H-distance 2 from the root bag.
Coloring extend_two_coloring(const RecursionFrame& frame, const Graph& g, const TreeDecomposition& td,
                             const ColoringOptions& options = {});

// Colors every vertex with H = G, Z empty and the decomposition root. Throws
// std::invalid_argument if td is not a tree decomposition of g.
Coloring two_color(const Graph& g, const TreeDecomposition& td, std::size_t k,
                   const ColoringOptions& options = {});

struct WeakDiameterReport {
  Hop diameter = 0;
  std::uint64_t bound = 0;
  std::optional<MonochromaticComponent> worst;  // set when the bound fails
  bool passed() const { return !worst; }
  std::string describe() const;
};

WeakDiameterReport verify_weak_diameter(const Graph& g, const Coloring& coloring, std::uint64_t bound);

}  // namespace weakdiam
