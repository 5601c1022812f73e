#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakdiam/coloring.hpp"
#include "weakdiam/instance.hpp"

namespace weakdiam {

struct PipelineOptions {
  CoverConstruction construction = CoverConstruction::kDiagonal;
  int threads = 0;  // 0 keeps the current setting
};

// A stage rejected its own output. `stage` names it; `detail` carries the witness.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& stage, const std::string& detail);
  std::string stage;
};

struct PartCertificate {
  std::size_t family = 0;  // 1-based
  std::size_t size = 0;
  std::size_t k = 0;
  BigInt w_bound = 0;
  Hop part_diameter = 0;   // inside the part's own intersection graph
  Hop power_diameter = 0;  // same coloring measured in G^r
  Color palette_low = 0;   // colors {palette_low, palette_low + 1}
  std::size_t tree_nodes = 0;
  std::size_t narrowness_violations = 0;
  bool decomposition_valid = false;
};

struct Checks {
  bool covers = false;
  bool laminar = false;
  bool power_identity = false;
  bool decompositions = false;
  bool domination = false;
  bool diameter = false;
  bool palette = false;
  bool independent = false;
  bool all() const {
    return covers && laminar && power_identity && decompositions && domination && diameter && palette &&
           independent;
  }
};

struct Certificate {
  std::uint32_t requested_radius = 0;
  std::uint32_t radius = 0;  // odd radius actually colored
  std::uint32_t t = 0;
  double mesh_constant = 0.0;
  double catch_constant = 0.0;
  std::size_t families = 0;
  std::string construction;
  int min_scale = 0;
  int max_scale = 0;
  bool widened = false;
  std::string f_r;
  std::vector<PartCertificate> parts;
  std::size_t colors_used = 0;
  std::size_t color_limit = 0;
  BigInt bound = 0;            // for G^radius
  BigInt requested_bound = 0;  // for G^requested_radius
  Hop measured_diameter = 0;   // in G^radius
  Hop requested_diameter = 0;  // in G^requested_radius
  Checks checks;
  bool passed() const { return checks.all(); }
};

struct SolveResult {
  std::uint32_t radius = 0;  // requested
  Coloring coloring;
  Certificate certificate;
};

SolveResult weak_diameter_coloring(const Instance& instance, std::uint32_t r, const PipelineOptions& options = {});

nlohmann::json certificate_to_json(const Certificate& certificate);
nlohmann::json result_to_json(const SolveResult& result);
std::string result_text(const SolveResult& result);
void save_result(const SolveResult& result, const std::string& path);

// Radius, colors and claimed bounds read back from a result file.
struct StoredResult {
  std::uint32_t radius = 0;
  std::vector<Color> colors;
  std::size_t color_limit = 0;
  BigInt bound = 0;  // claimed bound for G^radius
  bool claimed_pass = false;
  nlohmann::json certificate;
};
StoredResult stored_result_from_json(const nlohmann::json& doc);
StoredResult load_result(const std::string& path);

// Rebuilds G and G^r from the raw point sets with its own BFS and union-find,
// then checks the number of colors and the monochromatic diameter.
struct IndependentReport {
  std::size_t colors_used = 0;
  Hop diameter = 0;
  bool colors_ok = false;
  bool diameter_ok = false;
  std::string detail;
  bool passed() const { return colors_ok && diameter_ok; }
};
IndependentReport independent_verify(const Instance& instance, std::uint32_t r, const std::vector<Color>& colors,
                                     std::size_t color_limit, const BigInt& bound);

}  // namespace weakdiam
