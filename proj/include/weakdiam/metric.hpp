#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace weakdiam {

using PointId = std::uint32_t;

enum class MetricKind { kL2, kLinf, kMatrix };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

// Sorted, duplicate-free set of point indices.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<PointId> ids);
  explicit PointSet(std::vector<PointId> ids);

  // Caller guarantees ascending order without duplicates.
  static PointSet from_sorted(std::vector<PointId> ids);
  static PointSet range(PointId count);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  PointId front() const { return members_.front(); }
  PointId operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<PointId>& ids() const { return members_; }

  bool contains(PointId p) const;
  bool intersects(const PointSet& other) const;
  bool is_subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<PointId> members_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);

// A finite metric space: either a point cloud in R^n under L2/Linf, or an
// explicit distance matrix (dimension 0).
class Space {
 public:
  static Space from_coordinates(MetricKind kind, std::size_t dimension,
                                std::vector<double> coordinates);
  static Space from_points(MetricKind kind, const std::vector<std::vector<double>>& points);
  // Row-major N x N. Axioms are not enforced here; see verify_metric.
  static Space from_matrix(std::size_t count, std::vector<double> entries);

  std::size_t size() const { return count_; }
  std::size_t dimension() const { return dimension_; }
  MetricKind kind() const { return kind_; }
  bool has_coordinates() const { return kind_ != MetricKind::kMatrix; }

  std::span<const double> point(PointId p) const;
  const std::vector<double>& matrix() const { return matrix_; }

  // Throws std::out_of_range for invalid indices.
  double distance(PointId p, PointId q) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space() = default;
  double coordinate_distance(PointId p, PointId q) const;

  MetricKind kind_ = MetricKind::kL2;
  std::size_t dimension_ = 0;
  std::size_t count_ = 0;
  std::vector<double> coords_;
  std::vector<double> matrix_;
};

// Closed ball {y : d(x,y) <= r}.
PointSet ball(const Space& space, PointId x, double r);

// Max pairwise distance; 0 for singletons. Throws on empty sets.
double set_diameter(const Space& space, const PointSet& s);

struct MetricViolation {
  enum class Kind { kAsymmetric, kNonzeroDiagonal, kNegative, kNotFinite, kTriangle };
  Kind kind;
  PointId a = 0;
  PointId b = 0;
  PointId c = 0;  // only for triangle violations: d(a,b) > d(a,c) + d(c,b)
};

struct MetricReport {
  std::vector<MetricViolation> violations;  // first kMaxReported
  std::size_t total_violations = 0;
  bool valid() const { return total_violations == 0; }
  std::string describe() const;

  static constexpr std::size_t kMaxReported = 64;
};

MetricReport verify_metric(const Space& space);

}  // namespace weakdiam
