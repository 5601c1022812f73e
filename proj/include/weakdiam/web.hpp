#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakdiam/cover.hpp"
#include "weakdiam/metric.hpp"

namespace weakdiam {

using ElementId = std::uint32_t;

// Scale tag of the per-point singleton level below every stored scale.
inline constexpr int kSingletonScale = std::numeric_limits<int>::min();

struct WebElement {
  std::size_t family = 0;
  int scale = 0;
  std::vector<std::int64_t> lattice;
  PointSet raw;
  PointSet trimmed;               // raw minus every member of `reach`
  std::vector<ElementId> reach;   // R: lower-scale same-family cells, ascending ids
  double trimmed_diameter = 0.0;  // 0 when trimmed is empty

  bool is_singleton() const { return scale == kSingletonScale; }
};

// A query needed a scale the web does not store; the caller can rebuild wider.
class ScaleOutOfRange : public std::runtime_error {
 public:
  ScaleOutOfRange(int scale, int min_scale, int max_scale);
  int scale;
};

// A per-scale cover failed verification during construction.
class CoverFailure : public std::runtime_error {
 public:
  CoverFailure(int scale, const std::string& detail);
  int scale;
};

// Multi-scale laminar web. Immutable after construction; all queries are pure.
class Web {
 public:
  const Space& space() const { return *space_; }
  double mesh_constant() const { return mesh_constant_; }   // K
  double catch_constant() const { return catch_constant_; } // C = 2K(2K+1)
  int min_scale() const { return min_scale_; }
  int max_scale() const { return max_scale_; }
  std::size_t family_count() const { return family_count_; }
  CoverConstruction construction() const { return construction_; }

  std::size_t size() const { return elements_.size(); }
  const WebElement& element(ElementId id) const { return elements_.at(id); }
  const std::vector<WebElement>& elements() const { return elements_; }

  std::span<const ElementId> elements_at(std::size_t family, int scale) const;
  ElementId singleton(std::size_t family, PointId p) const;
  // The family's raw cell at `scale` containing p.
  std::optional<ElementId> raw_cell(std::size_t family, int scale, PointId p) const;
  // Cover radius (2K+1)^scale.
  double scale_radius(int scale) const;

 private:
  friend struct WebAssembler;

  std::size_t scale_slot(int scale) const;

  std::shared_ptr<const Space> space_;
  double mesh_constant_ = 0.0;
  double catch_constant_ = 0.0;
  int min_scale_ = 0;
  int max_scale_ = -1;
  std::size_t family_count_ = 0;
  CoverConstruction construction_ = CoverConstruction::kDiagonal;
  std::vector<WebElement> elements_;
  // [family][scale slot] -> element ids
  std::vector<std::vector<std::vector<ElementId>>> by_scale_;
  // [family][scale slot][point] -> raw cell id or kNone
  std::vector<std::vector<std::vector<ElementId>>> raw_owner_;
  std::vector<std::vector<ElementId>> singletons_;  // [family][point]
};

struct ScaleCover {
  int scale = 0;
  Cover cover;
};

// Grid covers at radius (2K+1)^l for l in [min_scale, max_scale]; every
// cover is verified (CoverFailure on rejection).
Web build_web(std::shared_ptr<const Space> space, int min_scale, int max_scale,
              CoverConstruction construction = CoverConstruction::kDiagonal);

// User covers, one per consecutive scale, all declaring the same K.
Web build_web_from_covers(std::shared_ptr<const Space> space, double mesh_constant,
                          std::vector<ScaleCover> covers);

// Recomputes R(U) from raw sets as a fixpoint over one-step admissible cells:
// same family, strictly smaller scale, meets U, not contained in U.
std::vector<ElementId> compute_R(const Web& web, ElementId element);

// Returns an element W with S inside W.trimmed and diam(W.trimmed) <= C diam(S).
// Throws ScaleOutOfRange when diam(S) needs a scale the web lacks.
ElementId catch_set(const Web& web, const PointSet& s);

// Family-restricted search over the raw cells holding the lowest point of S,
// finest scale first. Singletons catch |S| = 1.
std::optional<ElementId> catch_in_family(const Web& web, std::size_t family, const PointSet& s,
                                         double catch_constant);
std::optional<ElementId> catch_in_family(const Web& web, std::size_t family, const PointSet& s,
                                         double diameter, double catch_constant);

struct LaminarReport {
  std::optional<std::pair<ElementId, ElementId>> violation;
  bool valid() const { return !violation; }
  std::string describe(const Web& web) const;
};

// Exact laminarity check of the nonempty trimmed sets of one family
// (including the singleton level).
LaminarReport verify_laminar(const Web& web, std::size_t family);

// Diagnostic listing: one line per element.
std::string dump_web(const Web& web);

}  // namespace weakdiam
