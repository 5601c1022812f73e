#include "weakdiam/spacefill.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

namespace weakdiam {

ObjectSystem shallow_union_system(const ObjectSystem& system, Hop t) {
  if (t == 0) return system;
  return shallow_union_system(system, intersection_graph(system), t);
}

ObjectSystem shallow_union_system(const ObjectSystem& system, const Graph& intersections, Hop t) {
  if (intersections.size() != system.size()) throw std::invalid_argument("graph does not match the system");
  if (t == 0) return system;
  const auto count = static_cast<long>(system.size());
  std::vector<PointSet> unions(system.size());
  const std::vector<char> everywhere(system.size(), 1);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    const auto source = static_cast<Vertex>(i);
    const auto hops = bfs_within(intersections, std::span<const Vertex>(&source, 1), everywhere, t);
    std::vector<PointId> points;
    for (std::size_t j = 0; j < hops.size(); ++j)
      if (hops[j] != kUnreachable) {
        const auto& ids = system.object(j).ids();
        points.insert(points.end(), ids.begin(), ids.end());
      }
    unions[i] = PointSet(std::move(points));
  }
  return ObjectSystem(system.space_ptr(), std::move(unions));
}

std::string to_string(CountMode mode) { return mode == CountMode::kExact ? "exact" : "greedy"; }

CandidateLimitExceeded::CandidateLimitExceeded(std::size_t found, std::size_t limit)
    : std::length_error("exact count refused: " + std::to_string(found) + " candidates exceed the limit of " +
                        std::to_string(limit)),
      candidates(found) {}

std::vector<std::size_t> spacefill_candidates(const ObjectSystem& system, const std::vector<double>& diameters,
                                              const SpacefillQuery& q) {
  if (!(q.r > 0.0) || !(q.s > 0.0)) throw std::invalid_argument("spacefill queries need r, s > 0");
  if (diameters.size() != system.size()) throw std::invalid_argument("one diameter per object expected");
  const PointSet around = ball(system.space(), q.x, q.r);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < system.size(); ++i)
    if (diameters[i] >= q.s && system.object(i).intersects(around)) out.push_back(i);
  return out;
}

namespace {

using Mask = std::uint64_t;

// Maximum independent set size in the conflict graph given by `conflicts`.
void branch(const std::vector<Mask>& conflicts, Mask open, std::size_t taken, std::size_t& best) {
  if (open == 0) {
    best = std::max(best, taken);
    return;
  }
  if (taken + static_cast<std::size_t>(std::popcount(open)) <= best) return;
  const int v = std::countr_zero(open);
  branch(conflicts, open & ~conflicts[v] & ~(Mask{1} << v), taken + 1, best);
  branch(conflicts, open & ~(Mask{1} << v), taken, best);
}

}  // namespace

std::size_t spacefill_count(const ObjectSystem& system, const std::vector<double>& diameters,
                            const SpacefillQuery& q, CountMode mode, std::size_t exact_limit) {
  const auto candidates = spacefill_candidates(system, diameters, q);
  if (mode == CountMode::kGreedy) {
    std::vector<std::size_t> chosen;
    for (std::size_t c : candidates)
      if (std::none_of(chosen.begin(), chosen.end(),
                       [&](std::size_t d) { return system.object(c).intersects(system.object(d)); }))
        chosen.push_back(c);
    return chosen.size();
  }
  const std::size_t limit = std::min<std::size_t>(exact_limit, 64);
  if (candidates.size() > limit) throw CandidateLimitExceeded(candidates.size(), limit);
  std::vector<Mask> conflicts(candidates.size(), 0);
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b)
      if (system.object(candidates[a]).intersects(system.object(candidates[b]))) {
        conflicts[a] |= Mask{1} << b;
        conflicts[b] |= Mask{1} << a;
      }
  const Mask all = candidates.size() == 64 ? ~Mask{0} : (Mask{1} << candidates.size()) - 1;
  std::size_t best = 0;
  branch(conflicts, all, 0, best);
  return best;
}

std::size_t spacefill_count(const ObjectSystem& system, const SpacefillQuery& q, CountMode mode,
                            std::size_t exact_limit) {
  return spacefill_count(system, object_diameters(system), q, mode, exact_limit);
}

LemconsReport lemcons_check(const ObjectSystem& system, Hop t, const std::vector<SpacefillQuery>& queries,
                            std::size_t exact_limit) {
  const ObjectSystem unions = shallow_union_system(system, t);
  const auto union_diameters = object_diameters(unions);
  const auto diameters = object_diameters(system);
  LemconsReport report;
  const double shrink = 2.0 * static_cast<double>(t) + 2.0;
  for (const auto& q : queries) {
    LemconsRow row{q};
    row.union_count = spacefill_count(unions, union_diameters, q, CountMode::kExact, exact_limit);
    row.original_count =
        spacefill_count(system, diameters, {q.x, q.r + q.s, q.s / shrink}, CountMode::kExact, exact_limit);
    if (!row.holds() && !report.violation) report.violation = report.rows.size();
    report.rows.push_back(row);
  }
  return report;
}

std::string RoundnessReport::describe() const {
  if (round()) return "round at every radius";
  std::ostringstream out;
  out << "no inner ball for center " << *v << " at radius " << r;
  return out.str();
}

RoundnessReport roundness_check(const Space& space, const PointSet& s, double eta) {
  if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
  if (s.empty()) throw std::invalid_argument("roundness needs a nonempty set");
  const std::size_t count = space.size();
  const double diameter = set_diameter(space, s);
  RoundnessReport report;
  if (diameter == 0.0) return report;
  const std::size_t members = s.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Per candidate v': space sorted by distance from v', and the distance to
  // the nearest point outside S.
  std::vector<std::vector<PointId>> order(members);
  std::vector<double> escape(members, kInf);
  const auto member_total = static_cast<long>(members);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < member_total; ++i) {
    const PointId c = s[static_cast<std::size_t>(i)];
    auto& o = order[i];
    o.resize(count);
    std::iota(o.begin(), o.end(), PointId{0});
    std::vector<double> d(count);
    for (PointId y = 0; y < count; ++y) {
      d[y] = space.distance(c, y);
      if (!s.contains(y)) escape[i] = std::min(escape[i], d[y]);
    }
    std::stable_sort(o.begin(), o.end(), [&](PointId a, PointId b) { return d[a] < d[b]; });
  }

  // For center v, each v' covers the radii r with ball(v', eta r) inside
  // ball(v, r) and eta r < escape(v'); the union must cover (0, diameter].
  std::vector<double> uncovered(members, -1.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (long vi = 0; vi < member_total; ++vi) {
    const PointId v = s[static_cast<std::size_t>(vi)];
    std::vector<std::pair<double, double>> intervals;
    for (std::size_t ci = 0; ci < members; ++ci) {
      const PointId c = s[ci];
      const auto& o = order[ci];
      const double cap = escape[ci] / eta;
      double reach = 0.0;  // max d(v, y) over the current ball around c
      std::size_t i = 0;
      while (i < count) {
        const double level = space.distance(c, o[i]);
        if (level / eta > diameter || level / eta >= cap) break;
        while (i < count && space.distance(c, o[i]) == level) reach = std::max(reach, space.distance(v, o[i++]));
        const double next = i < count ? space.distance(c, o[i]) / eta : kInf;
        const double lo = std::max(level / eta, reach);
        const double hi = std::min(next, cap);
        if (lo < hi) intervals.emplace_back(lo, hi);
      }
    }
    std::sort(intervals.begin(), intervals.end());
    double covered = 0.0;
    for (auto [lo, hi] : intervals) {
      if (covered > diameter) break;
      if (lo > covered) break;
      covered = std::max(covered, hi);
    }
    if (covered <= diameter) {
      double gap_end = diameter;
      for (auto [lo, hi] : intervals)
        if (lo > covered) {
          gap_end = std::min(gap_end, lo);
          break;
        }
      uncovered[vi] = covered > 0.0 ? covered : gap_end / 2.0;
    }
  }
  for (std::size_t vi = 0; vi < members; ++vi)
    if (uncovered[vi] >= 0.0) {
      report.v = s[vi];
      report.r = uncovered[vi];
      break;
    }
  return report;
}

BigInt round_spacefill_bound(std::uint64_t k_doubling, double eta, double x) {
  if (k_doubling < 1) throw std::invalid_argument("doubling constant must be at least 1");
  if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("ratio must be positive and finite");
  const double q = (x + 1.0) / eta;
  int exponent = 0;
  const double mantissa = std::frexp(q, &exponent);  // q = mantissa * 2^exponent, mantissa in [0.5, 1)
  const int ceiling = mantissa == 0.5 ? exponent - 1 : exponent;
  BigInt result = 1;
  for (int i = 0; i < ceiling; ++i) result *= k_doubling;
  return result;
}

std::size_t greedy_half_cover(const Space& space, PointId x, double r) {
  const PointSet region = ball(space, x, r);
  std::vector<double> gap(region.size(), std::numeric_limits<double>::infinity());
  std::size_t centers = 0;
  std::size_t next = static_cast<std::size_t>(std::find(region.begin(), region.end(), x) - region.begin());
  while (true) {
    ++centers;
    const PointId c = region[next];
    for (std::size_t i = 0; i < region.size(); ++i) gap[i] = std::min(gap[i], space.distance(c, region[i]));
    std::size_t far = 0;
    for (std::size_t i = 1; i < region.size(); ++i)
      if (gap[i] > gap[far]) far = i;
    if (gap[far] <= r / 2.0) return centers;
    next = far;
  }
}

std::size_t doubling_estimate(const Space& space, const DoublingOptions& options) {
  const std::size_t count = space.size();
  if (count <= 1) return 1;
  std::vector<PointId> centers;
  if (count <= options.exhaustive_limit) {
    centers.resize(count);
    std::iota(centers.begin(), centers.end(), PointId{0});
  } else {
    const std::size_t picks = std::max<std::size_t>(1, std::min(options.sampled_centers, count));
    for (std::size_t i = 0; i < picks; ++i) centers.push_back(static_cast<PointId>(i * count / picks));
  }

  double smallest = std::numeric_limits<double>::infinity(), largest = 0.0;
  if (count > options.exhaustive_limit)
    for (PointId c : centers)
      for (PointId y = 0; y < count; ++y) {
        const double d = space.distance(c, y);
        if (d > 0.0) smallest = std::min(smallest, d);
        largest = std::max(largest, d);
      }

  std::vector<std::size_t> best(centers.size(), 1);
  const auto total = static_cast<long>(centers.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < total; ++i) {
    const PointId c = centers[i];
    std::vector<double> radii;
    if (count <= options.exhaustive_limit) {
      for (PointId y = 0; y < count; ++y) {
        const double d = space.distance(c, y);
        if (d > 0.0) {
          radii.push_back(d);
          radii.push_back(2.0 * d);
        }
      }
    } else if (largest > 0.0) {
      for (double r = smallest; r <= 2.0 * largest; r *= std::sqrt(2.0)) radii.push_back(r);
    }
    for (double r : radii) best[i] = std::max(best[i], greedy_half_cover(space, c, r));
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace weakdiam
