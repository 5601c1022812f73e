#include "weakdiam/cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace weakdiam {

std::string to_string(CoverConstruction construction) {
  return construction == CoverConstruction::kDiagonal ? "diagonal" : "product";
}

std::size_t Cover::cell_count() const {
  std::size_t total = 0;
  for (const auto& family : families) total += family.size();
  return total;
}

std::size_t grid_family_count(std::size_t dimension, CoverConstruction construction) {
  if (construction == CoverConstruction::kDiagonal) return dimension + 1;
  return std::size_t{1} << dimension;
}

double grid_mesh_constant(MetricKind kind, std::size_t dimension, CoverConstruction construction) {
  if (kind == MetricKind::kMatrix) throw std::invalid_argument("grid covers need coordinates");
  const double side_ratio = construction == CoverConstruction::kDiagonal
                                ? 2.0 * static_cast<double>(dimension + 1)
                                : 4.0;
  return kind == MetricKind::kL2 ? side_ratio * std::sqrt(static_cast<double>(dimension)) : side_ratio;
}

Cover shifted_grid_cover(const Space& space, double r, CoverConstruction construction) {
  if (!space.has_coordinates())
    throw std::invalid_argument("shifted grid covers need a coordinate space; supply explicit covers");
  if (!(r > 0.0)) throw std::invalid_argument("cover radius must be positive");

  const std::size_t n = space.dimension();
  const std::size_t families = grid_family_count(n, construction);
  Cover cover;
  cover.radius = r;
  cover.construction = construction;
  cover.mesh_constant = grid_mesh_constant(space.kind(), n, construction);
  cover.side = construction == CoverConstruction::kDiagonal ? 2.0 * static_cast<double>(n + 1) * r : 4.0 * r;
  cover.shifts.assign(families, std::vector<double>(n, 0.0));
  for (std::size_t f = 0; f < families; ++f)
    for (std::size_t j = 0; j < n; ++j) {
      if (construction == CoverConstruction::kDiagonal)
        cover.shifts[f][j] = 2.0 * static_cast<double>(f) * r;
      else
        cover.shifts[f][j] = ((f >> j) & 1u) ? 2.0 * r : 0.0;
    }

  const std::size_t count = space.size();
  // lattice[(f * count + p) * n + j]
  std::vector<std::int64_t> lattice(families * count * n);
  const auto total = static_cast<long>(families * count);
#pragma omp parallel for schedule(static)
  for (long fp = 0; fp < total; ++fp) {
    const std::size_t f = static_cast<std::size_t>(fp) / count;
    const auto p = static_cast<PointId>(static_cast<std::size_t>(fp) % count);
    const auto y = space.point(p);
    for (std::size_t j = 0; j < n; ++j)
      lattice[static_cast<std::size_t>(fp) * n + j] =
          static_cast<std::int64_t>(std::floor((y[j] - cover.shifts[f][j]) / cover.side));
  }

  cover.families.resize(families);
  for (std::size_t f = 0; f < families; ++f) {
    auto key = [&](PointId p) {
      const auto* base = lattice.data() + (f * count + p) * n;
      return std::vector<std::int64_t>(base, base + n);
    };
    std::vector<PointId> order(count);
    std::iota(order.begin(), order.end(), PointId{0});
    std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) {
      const auto* ka = lattice.data() + (f * count + a) * n;
      const auto* kb = lattice.data() + (f * count + b) * n;
      return std::lexicographical_compare(ka, ka + n, kb, kb + n);
    });
    std::size_t start = 0;
    while (start < count) {
      std::size_t stop = start + 1;
      const auto k = key(order[start]);
      while (stop < count && key(order[stop]) == k) ++stop;
      Cell cell;
      cell.family = f;
      cell.lattice = k;
      cell.members = PointSet::from_sorted(std::vector<PointId>(order.begin() + start, order.begin() + stop));
      cover.families[f].push_back(std::move(cell));
      start = stop;
    }
  }
  return cover;
}

Cover explicit_cover(double mesh_constant, double radius, std::vector<std::vector<PointSet>> families) {
  Cover cover;
  cover.radius = radius;
  cover.mesh_constant = mesh_constant;
  cover.explicit_cells = true;
  cover.families.resize(families.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    std::int64_t index = 0;
    for (auto& members : families[f]) {
      if (members.empty()) continue;
      cover.families[f].push_back(Cell{f, {index++}, std::move(members)});
    }
  }
  return cover;
}

std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cells_containing(const Cover& cover,
                                                                                   std::size_t point_count) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> where(point_count);
  for (std::uint32_t f = 0; f < cover.families.size(); ++f)
    for (std::uint32_t c = 0; c < cover.families[f].size(); ++c)
      for (PointId p : cover.families[f][c].members) {
        if (p >= point_count) throw std::out_of_range("cover cell references a point outside the space");
        where[p].emplace_back(f, c);
      }
  return where;
}

std::string CoverReport::describe() const {
  if (valid()) return "valid";
  std::ostringstream out;
  if (malformed) out << "malformed: " << *malformed << "; ";
  if (overlap)
    out << "family " << overlap->family << " cells " << overlap->cell_a << " and " << overlap->cell_b
        << " share point " << overlap->point << "; ";
  if (mesh)
    out << "family " << mesh->family << " cell " << mesh->cell << " has diameter " << mesh->diameter
        << " > " << mesh->bound << "; ";
  if (lebesgue) out << "no cell contains the ball around point " << *lebesgue << "; ";
  std::string text = out.str();
  return text.substr(0, text.size() - 2);
}

CoverReport verify_cover(const Space& space, const Cover& cover, double r, double mesh_constant) {
  CoverReport report;
  const std::size_t count = space.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> where;
  try {
    where = cells_containing(cover, count);
  } catch (const std::out_of_range& e) {
    report.malformed = e.what();
    return report;
  }

  for (PointId p = 0; p < count && !report.overlap; ++p) {
    const auto& list = where[p];  // sorted by (family, cell)
    for (std::size_t a = 0; a + 1 < list.size(); ++a)
      if (list[a].first == list[a + 1].first) {
        report.overlap = CoverReport::Overlap{list[a].first, list[a].second, list[a + 1].second, p};
        break;
      }
  }

  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t f = 0; f < cover.families.size(); ++f)
    for (std::size_t c = 0; c < cover.families[f].size(); ++c) cells.emplace_back(f, c);
  std::vector<double> diameters(cells.size(), 0.0);
  const auto cell_total = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < cell_total; ++i)
    diameters[i] = set_diameter(space, cover.families[cells[i].first][cells[i].second].members);
  const double bound = mesh_constant * r;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!(diameters[i] <= bound)) {
      report.mesh = CoverReport::MeshExcess{cells[i].first, cells[i].second, diameters[i], bound};
      break;
    }

  std::vector<char> caught(count, 0);
  const auto point_total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long x = 0; x < point_total; ++x) {
    const PointSet b = ball(space, static_cast<PointId>(x), r);
    for (auto [f, c] : where[x])
      if (b.is_subset_of(cover.families[f][c].members)) {
        caught[x] = 1;
        break;
      }
  }
  for (PointId x = 0; x < count; ++x)
    if (!caught[x]) {
      report.lebesgue = x;
      break;
    }
  return report;
}

double half_scale(double mesh_constant, int scale) {
  return 0.5 * std::pow(2.0 * mesh_constant + 1.0, static_cast<double>(scale));
}

int scale_index(double mesh_constant, double d) {
  if (!(mesh_constant > 1.0)) throw std::invalid_argument("scale_index needs K > 1");
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("scale_index needs a positive finite d");
  const double base = 2.0 * mesh_constant + 1.0;
  int l = static_cast<int>(std::floor(std::log(2.0 * d) / std::log(base))) + 1;
  while (half_scale(mesh_constant, l - 1) > d) --l;
  while (!(d < half_scale(mesh_constant, l))) ++l;
  return l;
}

}  // namespace weakdiam
