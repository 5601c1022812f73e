#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakdiam/coloring.hpp"
#include "weakdiam/graph.hpp"
#include "weakdiam/objects.hpp"

namespace weakdiam {

// Object i becomes the union of all objects within hop distance t of i in the
// intersection graph. Ids are preserved.
ObjectSystem shallow_union_system(const ObjectSystem& system, Hop t);
ObjectSystem shallow_union_system(const ObjectSystem& system, const Graph& intersections, Hop t);

struct SpacefillQuery {
  PointId x = 0;
  double r = 0.0;
  double s = 0.0;
};

enum class CountMode { kExact, kGreedy };
std::string to_string(CountMode mode);

// Thrown when an exact count would branch over too many candidates.
class CandidateLimitExceeded : public std::length_error {
 public:
  CandidateLimitExceeded(std::size_t candidates, std::size_t limit);
  std::size_t candidates;
};

inline constexpr std::size_t kDefaultExactLimit = 25;

// Objects of diameter >= s meeting ball(x, r), ascending.
std::vector<std::size_t> spacefill_candidates(const ObjectSystem& system, const std::vector<double>& diameters,
                                              const SpacefillQuery& q);

// Maximum (exact) or maximal ascending-greedy number of pairwise-disjoint
// candidates. `diameters` must be object_diameters(system).
std::size_t spacefill_count(const ObjectSystem& system, const std::vector<double>& diameters,
                            const SpacefillQuery& q, CountMode mode, std::size_t exact_limit = kDefaultExactLimit);
std::size_t spacefill_count(const ObjectSystem& system, const SpacefillQuery& q, CountMode mode,
                            std::size_t exact_limit = kDefaultExactLimit);

struct LemconsRow {
  SpacefillQuery query;
  std::size_t union_count = 0;     // system^t at (x, r, s)
  std::size_t original_count = 0;  // system at (x, r + s, s / (2t + 2))
  bool holds() const { return union_count <= original_count; }
};

struct LemconsReport {
  std::vector<LemconsRow> rows;
  std::optional<std::size_t> violation;  // first failing row
  bool valid() const { return !violation; }
};

// Exact counts on both sides; throws CandidateLimitExceeded like spacefill_count.
LemconsReport lemcons_check(const ObjectSystem& system, Hop t, const std::vector<SpacefillQuery>& queries,
                            std::size_t exact_limit = kDefaultExactLimit);

struct RoundnessReport {
  std::optional<PointId> v;  // first failing center
  double r = 0.0;            // an uncovered radius for v
  bool round() const { return !v; }
  std::string describe() const;
};

// For every v in S and every r in (0, diam S], looks for v' in S with
// ball(v', eta r) inside S and inside ball(v, r). Exact for finite spaces.
RoundnessReport roundness_check(const Space& space, const PointSet& s, double eta);

// K^ceil(log2((x + 1) / eta)).
BigInt round_spacefill_bound(std::uint64_t k_doubling, double eta, double x);

// Number of radius-r/2 balls, centered in ball(x, r) and picked farthest-first,
// that cover ball(x, r).
std::size_t greedy_half_cover(const Space& space, PointId x, double r);

struct DoublingOptions {
  std::size_t exhaustive_limit = 40;  // every center and radius up to this size
  std::size_t sampled_centers = 64;
};

// Max greedy_half_cover over sampled (x, r).
std::size_t doubling_estimate(const Space& space, const DoublingOptions& options = {});

}  // namespace weakdiam
