#include "weakdiam/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weakdiam {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kL2: return "l2";
    case MetricKind::kLinf: return "linf";
    case MetricKind::kMatrix: return "matrix";
  }
  return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "l2") return MetricKind::kL2;
  if (name == "linf") return MetricKind::kLinf;
  if (name == "matrix") return MetricKind::kMatrix;
  throw std::invalid_argument("unknown metric '" + name + "' (expected l2, linf or matrix)");
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::initializer_list<PointId> ids) : PointSet(std::vector<PointId>(ids)) {}

PointSet::PointSet(std::vector<PointId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PointSet PointSet::from_sorted(std::vector<PointId> ids) {
  PointSet s;
  s.members_ = std::move(ids);
  return s;
}

PointSet PointSet::range(PointId count) {
  std::vector<PointId> ids(count);
  for (PointId i = 0; i < count; ++i) ids[i] = i;
  return from_sorted(std::move(ids));
}

bool PointSet::contains(PointId p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool PointSet::intersects(const PointSet& other) const {
  const PointSet& small = size() <= other.size() ? *this : other;
  const PointSet& large = size() <= other.size() ? other : *this;
  if (small.empty()) return false;
  // Linear merge when sizes are comparable, binary search otherwise.
  if (large.size() < 16 * small.size()) {
    auto a = small.begin(), b = large.begin();
    while (a != small.end() && b != large.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }
  for (PointId p : small)
    if (large.contains(p)) return true;
  return false;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  if (size() > other.size()) return false;
  if (other.size() < 16 * size())
    return std::includes(other.begin(), other.end(), begin(), end());
  for (PointId p : members_)
    if (!other.contains(p)) return false;
  return true;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  std::vector<PointId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet::from_sorted(std::move(out));
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
  std::vector<PointId> out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet::from_sorted(std::move(out));
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  std::vector<PointId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet::from_sorted(std::move(out));
}

// ---------------------------------------------------------------------------
// Space

Space Space::from_coordinates(MetricKind kind, std::size_t dimension,
                              std::vector<double> coordinates) {
  if (kind == MetricKind::kMatrix)
    throw std::invalid_argument("coordinate spaces must use the l2 or linf metric");
  if (dimension == 0) throw std::invalid_argument("coordinate spaces need dimension >= 1");
  if (coordinates.empty() || coordinates.size() % dimension != 0)
    throw std::invalid_argument("coordinate array is empty or not a multiple of the dimension");
  for (double c : coordinates)
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  Space s;
  s.kind_ = kind;
  s.dimension_ = dimension;
  s.count_ = coordinates.size() / dimension;
  s.coords_ = std::move(coordinates);
  return s;
}

Space Space::from_points(MetricKind kind, const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("space needs at least one point");
  const std::size_t n = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n)
      throw std::invalid_argument("point " + std::to_string(i) + " has " +
                                  std::to_string(points[i].size()) + " coordinates, expected " +
                                  std::to_string(n));
    flat.insert(flat.end(), points[i].begin(), points[i].end());
  }
  return from_coordinates(kind, n, std::move(flat));
}

Space Space::from_matrix(std::size_t count, std::vector<double> entries) {
  if (count == 0) throw std::invalid_argument("space needs at least one point");
  if (entries.size() != count * count)
    throw std::invalid_argument("distance matrix must be N x N");
  Space s;
  s.kind_ = MetricKind::kMatrix;
  s.dimension_ = 0;
  s.count_ = count;
  s.matrix_ = std::move(entries);
  return s;
}

std::span<const double> Space::point(PointId p) const {
  if (!has_coordinates()) throw std::logic_error("matrix spaces have no coordinates");
  if (p >= count_) throw std::out_of_range("point index " + std::to_string(p) + " out of range");
  return {coords_.data() + std::size_t{p} * dimension_, dimension_};
}

double Space::coordinate_distance(PointId p, PointId q) const {
  const double* a = coords_.data() + std::size_t{p} * dimension_;
  const double* b = coords_.data() + std::size_t{q} * dimension_;
  if (kind_ == MetricKind::kLinf) {
    double m = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < dimension_; ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double Space::distance(PointId p, PointId q) const {
  if (p >= count_ || q >= count_)
    throw std::out_of_range("point index out of range: " + std::to_string(std::max(p, q)) +
                            " >= " + std::to_string(count_));
  if (kind_ == MetricKind::kMatrix) return matrix_[std::size_t{p} * count_ + q];
  if (p == q) return 0.0;
  return coordinate_distance(p, q);
}

PointSet ball(const Space& space, PointId x, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  if (x >= space.size()) throw std::out_of_range("ball center out of range");
  std::vector<PointId> members;
  for (PointId y = 0; y < space.size(); ++y)
    if (space.distance(x, y) <= r) members.push_back(y);
  return PointSet::from_sorted(std::move(members));
}

double set_diameter(const Space& space, const PointSet& s) {
  if (s.empty()) throw std::invalid_argument("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, space.distance(s[i], s[j]));
  return best;
}

// ---------------------------------------------------------------------------
// verify_metric

std::string MetricReport::describe() const {
  if (valid()) return "valid";
  std::ostringstream out;
  out << total_violations << " violation(s)";
  for (const auto& v : violations) {
    out << "; ";
    switch (v.kind) {
      case MetricViolation::Kind::kAsymmetric: out << "asymmetric (" << v.a << "," << v.b << ")"; break;
      case MetricViolation::Kind::kNonzeroDiagonal: out << "nonzero diagonal at " << v.a; break;
      case MetricViolation::Kind::kNegative: out << "negative entry (" << v.a << "," << v.b << ")"; break;
      case MetricViolation::Kind::kNotFinite: out << "non-finite entry (" << v.a << "," << v.b << ")"; break;
      case MetricViolation::Kind::kTriangle:
        out << "triangle (" << v.a << "," << v.b << "," << v.c << ")";
        break;
    }
  }
  return out.str();
}

MetricReport verify_metric(const Space& space) {
  MetricReport report;
  if (space.has_coordinates()) return report;

  auto add = [&](MetricViolation v) {
    if (report.violations.size() < MetricReport::kMaxReported) report.violations.push_back(v);
    ++report.total_violations;
  };
  using K = MetricViolation::Kind;
  const auto n = static_cast<PointId>(space.size());
  for (PointId a = 0; a < n; ++a) {
    if (space.distance(a, a) != 0.0) add({K::kNonzeroDiagonal, a, a});
    for (PointId b = 0; b < n; ++b) {
      const double d = space.distance(a, b);
      if (!std::isfinite(d)) add({K::kNotFinite, a, b});
      else if (d < 0.0) add({K::kNegative, a, b});
      if (a < b && d != space.distance(b, a)) add({K::kAsymmetric, a, b});
    }
  }
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b)
      for (PointId c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (space.distance(a, b) > space.distance(a, c) + space.distance(c, b))
          add({K::kTriangle, a, b, c});
      }
  return report;
}

}  // namespace weakdiam
