#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "weakdiam/instance.hpp"

namespace weakdiam {

enum class GeneratorKind { kDisks, kBoxes, kGridObjects };
std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct GenerateParams {
  GeneratorKind kind = GeneratorKind::kDisks;
  std::size_t dimension = 2;
  std::size_t points = 1000;
  std::size_t objects = 100;
  double radius_min = 0.5;
  double radius_max = 1.0;
  double extent = 10.0;      // cloud lives in [0, extent]^n
  bool grid_cloud = false;   // lattice instead of uniform samples
  MetricKind metric = MetricKind::kL2;
  std::uint64_t seed = 1;
};

// Deterministic in params. disks: metric balls around cloud points; boxes:
// axis-aligned boxes around cloud points; grid-objects: the 2^n corners of unit
// lattice cells over {0..m}^n. Throws std::invalid_argument on degenerate params.
Instance generate(const GenerateParams& params);

// Largest eta = 2^-j (j <= max_halvings) for which every object is eta-round.
std::optional<double> round_eta(const Instance& instance, int max_halvings = 8);

}  // namespace weakdiam
