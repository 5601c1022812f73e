#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakdiam/metric.hpp"

namespace weakdiam {

// kDiagonal: n+1 families of half-open cubes of side 2(n+1)r, family i shifted
// by 2ir along the all-ones diagonal. kProduct: 2^n families of side-4r cubes,
// one per choice of a {0, 2r} shift in each coordinate.
enum class CoverConstruction { kDiagonal, kProduct };

std::string to_string(CoverConstruction construction);

struct Cell {
  std::size_t family = 0;
  std::vector<std::int64_t> lattice;  // grid coordinates; a plain index for explicit covers
  PointSet members;                   // never empty
};

// A cover split into families of pairwise-disjoint cells, with mesh <= K*radius
// and Lebesgue number >= radius when valid.
struct Cover {
  double radius = 0.0;
  double side = 0.0;  // 0 for explicit covers
  double mesh_constant = 0.0;  // K
  CoverConstruction construction = CoverConstruction::kDiagonal;
  bool explicit_cells = false;
  std::vector<std::vector<double>> shifts;  // per family
  std::vector<std::vector<Cell>> families;

  std::size_t family_count() const { return families.size(); }
  std::size_t cell_count() const;
};

// Mesh constant of the grid covers: side/r, times sqrt(n) under L2.
double grid_mesh_constant(MetricKind kind, std::size_t dimension, CoverConstruction construction);
std::size_t grid_family_count(std::size_t dimension, CoverConstruction construction);

// Throws std::invalid_argument for matrix spaces or r <= 0.
Cover shifted_grid_cover(const Space& space, double r,
                         CoverConstruction construction = CoverConstruction::kDiagonal);

// Wraps user-supplied cells; empty cells are dropped.
Cover explicit_cover(double mesh_constant, double radius, std::vector<std::vector<PointSet>> families);

// For every point, the (family, cell) pairs whose members contain it.
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cells_containing(const Cover& cover,
                                                                                   std::size_t point_count);

struct CoverReport {
  struct Overlap {
    std::size_t family, cell_a, cell_b;
    PointId point;
  };
  struct MeshExcess {
    std::size_t family, cell;
    double diameter, bound;
  };
  std::optional<Overlap> overlap;
  std::optional<MeshExcess> mesh;
  std::optional<PointId> lebesgue;  // a center whose r-ball fits in no cell
  std::optional<std::string> malformed;

  bool valid() const { return !overlap && !mesh && !lebesgue && !malformed; }
  std::string describe() const;
};

// Exhaustive: per-family disjointness, diam(cell) <= K*r, and every ball
// B(x, r) inside some cell.
CoverReport verify_cover(const Space& space, const Cover& cover, double r, double mesh_constant);

// 0.5 * (2K+1)^l, the catching threshold at scale l.
double half_scale(double mesh_constant, int scale);

// The unique l with 0.5(2K+1)^(l-1) <= d < 0.5(2K+1)^l.
int scale_index(double mesh_constant, double d);

}  // namespace weakdiam
