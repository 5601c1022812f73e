#include "weakdiam/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "weakdiam/spacefill.hpp"

namespace weakdiam {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kDisks: return "disks";
    case GeneratorKind::kBoxes: return "boxes";
    case GeneratorKind::kGridObjects: return "grid-objects";
  }
  return "disks";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  if (name == "disks") return GeneratorKind::kDisks;
  if (name == "boxes") return GeneratorKind::kBoxes;
  if (name == "grid-objects") return GeneratorKind::kGridObjects;
  throw std::invalid_argument("unknown generator kind '" + name + "' (disks, boxes, grid-objects)");
}

namespace {

std::vector<double> lattice_cloud(std::size_t n, std::size_t side, double spacing) {
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= side;
  std::vector<double> coords;
  coords.reserve(total * n);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < n; ++j) {
      coords.push_back(static_cast<double>(rest % side) * spacing);
      rest /= side;
    }
  }
  return coords;
}

std::size_t lattice_side(std::size_t n, std::size_t points) {
  auto side = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(points), 1.0 / static_cast<double>(n))));
  while (std::pow(static_cast<double>(side + 1), static_cast<double>(n)) <= static_cast<double>(points)) ++side;
  return std::max<std::size_t>(side, 2);
}

}  // namespace

Instance generate(const GenerateParams& p) {
  if (p.dimension < 1) throw std::invalid_argument("generators need dimension >= 1");
  if (p.points == 0 || p.objects == 0) throw std::invalid_argument("point and object counts must be positive");
  if (p.metric == MetricKind::kMatrix) throw std::invalid_argument("generators produce coordinate spaces");
  std::mt19937_64 rng(p.seed);
  const std::size_t n = p.dimension;
  Instance instance;
  instance.seed = p.seed;
  instance.name = to_string(p.kind) + "-n" + std::to_string(n) + "-s" + std::to_string(p.seed);

  if (p.kind == GeneratorKind::kGridObjects) {
    const std::size_t side = lattice_side(n, p.points);
    auto space = std::make_shared<const Space>(Space::from_coordinates(p.metric, n, lattice_cloud(n, side, 1.0)));
    std::uniform_int_distribution<std::size_t> corner(0, side - 2);
    std::vector<PointSet> objects;
    for (std::size_t i = 0; i < p.objects; ++i) {
      std::vector<std::size_t> low(n);
      for (auto& c : low) c = corner(rng);
      std::vector<PointId> ids;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::size_t index = 0, stride = 1;
        for (std::size_t j = 0; j < n; ++j) {
          index += (low[j] + ((mask >> j) & 1u)) * stride;
          stride *= side;
        }
        ids.push_back(static_cast<PointId>(index));
      }
      objects.emplace_back(std::move(ids));
    }
    instance.space = space;
    instance.objects = ObjectSystem(space, std::move(objects));
    return instance;
  }

  if (!(p.radius_min > 0.0) || p.radius_max < p.radius_min || !std::isfinite(p.radius_max))
    throw std::invalid_argument("radius range must satisfy 0 < min <= max < inf");
  if (!(p.extent > 0.0)) throw std::invalid_argument("extent must be positive");

  std::vector<double> coords;
  if (p.grid_cloud) {
    const std::size_t side = lattice_side(n, p.points);
    coords = lattice_cloud(n, side, p.extent / static_cast<double>(side - 1));
  } else {
    std::uniform_real_distribution<double> unit(0.0, p.extent);
    coords.resize(p.points * n);
    for (auto& c : coords) c = unit(rng);
  }
  auto space = std::make_shared<const Space>(Space::from_coordinates(p.metric, n, std::move(coords)));
  const auto count = static_cast<PointId>(space->size());
  std::uniform_int_distribution<PointId> pick(0, count - 1);
  std::uniform_real_distribution<double> radius(p.radius_min, p.radius_max);

  std::vector<PointSet> objects;
  for (std::size_t i = 0; i < p.objects; ++i) {
    const PointId center = pick(rng);
    if (p.kind == GeneratorKind::kDisks) {
      objects.push_back(ball(*space, center, radius(rng)));
      continue;
    }
    std::vector<double> half(n);
    for (auto& h : half) h = radius(rng);
    const auto c = space->point(center);
    std::vector<PointId> ids;
    for (PointId q = 0; q < count; ++q) {
      const auto y = space->point(q);
      bool inside = true;
      for (std::size_t j = 0; j < n && inside; ++j) inside = std::abs(y[j] - c[j]) <= half[j];
      if (inside) ids.push_back(q);
    }
    objects.emplace_back(std::move(ids));
  }
  instance.space = space;
  instance.objects = ObjectSystem(space, std::move(objects));
  return instance;
}

std::optional<double> round_eta(const Instance& instance, int max_halvings) {
  double eta = 1.0;
  for (int j = 0; j <= max_halvings; ++j, eta /= 2.0) {
    bool all = true;
    for (const auto& s : instance.objects.objects())
      if (!roundness_check(*instance.space, s, eta).round()) {
        all = false;
        break;
      }
    if (all) return eta;
  }
  return std::nullopt;
}

}  // namespace weakdiam
