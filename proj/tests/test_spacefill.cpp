#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support.hpp"
#include "weakdiam/serial.hpp"
#include "weakdiam/spacefill.hpp"

using namespace weakdiam;

namespace {

// Largest pairwise-disjoint subfamily by enumerating all 2^m subsets.
std::size_t subset_oracle(const ObjectSystem& system, const std::vector<std::size_t>& candidates) {
  const std::size_t m = candidates.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool disjoint = true;
    for (std::size_t a = 0; a < m && disjoint; ++a)
      for (std::size_t b = a + 1; b < m && disjoint; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u))
          disjoint = !system.object(candidates[a]).intersects(system.object(candidates[b]));
    if (disjoint) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

}  // namespace

TEST_CASE("shallow unions") {
  const auto space = testing::line_space({0, 1, 2, 3, 4, 5, 6});
  const ObjectSystem chain(space, {PointSet{0, 1}, PointSet{1, 2}, PointSet{2, 3}, PointSet{5, 6}});
  CHECK(shallow_union_system(chain, 0).objects() == chain.objects());
  const auto one = shallow_union_system(chain, 1);
  CHECK(one.object(0) == PointSet{0, 1, 2});
  CHECK(one.object(1) == PointSet{0, 1, 2, 3});
  CHECK(one.object(3) == PointSet{5, 6});
  const auto far = shallow_union_system(chain, 10);
  for (std::size_t i = 0; i < 3; ++i) CHECK(far.object(i) == PointSet{0, 1, 2, 3});

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const auto cloud = testing::random_cloud(rng, MetricKind::kL2, 2, 200, 10.0);
    const auto system = testing::random_balls(rng, cloud, 40, 0.3, 1.2);
    const Graph g = intersection_graph(system);
    const auto d = testing::all_pairs(g);
    for (Hop t : {1u, 2u, 4u}) {
      const auto fast = shallow_union_system(system, t);
      CHECK(fast.objects() == serial::shallow_union_system(system, t).objects());
      for (std::size_t i = 0; i < system.size(); ++i) {
        std::vector<PointId> pts;
        for (std::size_t j = 0; j < system.size(); ++j)
          if (d[i][j] <= t) pts.insert(pts.end(), system.object(j).begin(), system.object(j).end());
        CHECK(fast.object(i) == PointSet(pts));
      }
    }
  }
}

TEST_CASE("spacefill counts on hand-built systems") {
  const auto space = testing::line_space({0, 1, 2, 3, 4, 5});
  const ObjectSystem one(space, {PointSet{0, 1}, PointSet{4}});
  CHECK(spacefill_count(one, {0, 1.0, 1.0}, CountMode::kExact) == 1);
  const ObjectSystem two(space, {PointSet{0, 1}, PointSet{2, 3}, PointSet{1, 2}});
  CHECK(spacefill_count(two, {1, 1.5, 1.0}, CountMode::kExact) == 2);
  CHECK(spacefill_count(two, {1, 1.5, 1.0}, CountMode::kGreedy) == 2);
  // Greedy in ascending order can be beaten: {0..2} blocks both {0,1}-side and {2,3}-side picks.
  const ObjectSystem trap(space, {PointSet{1, 2}, PointSet{0, 1}, PointSet{2, 3}});
  CHECK(spacefill_count(trap, {1, 2.0, 1.0}, CountMode::kGreedy) == 1);
  CHECK(spacefill_count(trap, {1, 2.0, 1.0}, CountMode::kExact) == 2);
  CHECK_THROWS_AS(spacefill_count(one, {0, 0.0, 1.0}, CountMode::kExact), std::invalid_argument);
}

TEST_CASE("exact counts match subset enumeration") {
  std::mt19937_64 rng(43);
  std::size_t compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto cloud = testing::random_cloud(rng, MetricKind::kL2, 2, 150, 6.0);
    const auto system = testing::random_balls(rng, cloud, 30, 0.2, 1.2);
    const auto diameters = object_diameters(system);
    std::uniform_int_distribution<PointId> pick(0, 149);
    std::uniform_real_distribution<double> radius(0.2, 2.0);
    for (int q = 0; q < 5; ++q) {
      const SpacefillQuery query{pick(rng), radius(rng), radius(rng)};
      const auto candidates = spacefill_candidates(system, diameters, query);
      if (candidates.size() > 16) continue;
      const std::size_t exact = spacefill_count(system, diameters, query, CountMode::kExact);
      const std::size_t greedy = spacefill_count(system, diameters, query, CountMode::kGreedy);
      CHECK(exact == subset_oracle(system, candidates));
      CHECK(greedy <= exact);
      CHECK((candidates.empty() ? greedy == 0 : greedy >= 1));
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("exact counting refuses large candidate sets") {
  const auto space = testing::line_space({0, 1, 2, 3, 4, 5, 6, 7});
  std::vector<PointSet> sets;
  for (PointId p = 0; p < 7; ++p) sets.push_back(PointSet{p, p + 1});
  const ObjectSystem system(space, sets);
  try {
    spacefill_count(system, {3, 10.0, 1.0}, CountMode::kExact, 5);
    FAIL("expected a refusal");
  } catch (const CandidateLimitExceeded& e) {
    CHECK(e.candidates == 7);
  }
  CHECK(spacefill_count(system, {3, 10.0, 1.0}, CountMode::kGreedy, 5) == 4);
  CHECK(spacefill_count(system, {3, 10.0, 1.0}, CountMode::kExact, 7) == 4);
}

TEST_CASE("shallow-union inequality") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    const auto cloud = testing::random_cloud(rng, MetricKind::kL2, 2, 400, 15.0);
    const auto system = testing::random_balls(rng, cloud, 60, 0.3, 1.2);
    for (Hop t : {0u, 1u, 2u}) {
      const auto queries = testing::pick_lemcons_queries(rng, system, t, 10, kDefaultExactLimit);
      CHECK(queries.size() == 10);
      const auto report = lemcons_check(system, t, queries);
      CHECK(report.valid());
      CHECK(report.rows.size() == queries.size());
    }
  }

  // Clustered: many small objects piled near a few centers.
  std::vector<double> flat;
  std::normal_distribution<double> jitter(0.0, 0.3);
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 60; ++i) {
      flat.push_back(5.0 * c + jitter(rng));
      flat.push_back(jitter(rng));
    }
  const auto clustered = std::make_shared<const Space>(Space::from_coordinates(MetricKind::kL2, 2, flat));
  const auto system = testing::random_balls(rng, clustered, 50, 0.05, 0.4);
  for (Hop t : {1u, 3u}) {
    const auto queries = testing::pick_lemcons_queries(rng, system, t, 20, kDefaultExactLimit);
    CHECK(lemcons_check(system, t, queries).valid());
  }
}

TEST_CASE("roundness") {
  const auto line = testing::line_space({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19,
                                         20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30});
  const PointSet whole = PointSet::range(31);
  CHECK(roundness_check(*line, whole, 1.0).round());
  CHECK(roundness_check(*line, whole, 0.25).round());

  const PointSet gapped{0, 1, 2, 3, 4, 20, 21, 22, 23, 24};
  const auto report = roundness_check(*line, gapped, 0.25);
  REQUIRE_FALSE(report.round());
  CHECK(gapped.contains(*report.v));
  CHECK(report.r > 4.0);
  CHECK_FALSE(testing::brute_round(*line, gapped, 0.25));

  CHECK_THROWS_AS(roundness_check(*line, whole, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(roundness_check(*line, whole, 1.5), std::invalid_argument);

  std::mt19937_64 rng(53);
  std::size_t round = 0, not_round = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto cloud = testing::random_cloud(rng, MetricKind::kL2, trial % 2 + 1, 60, 5.0);
    const auto system = testing::random_balls(rng, cloud, 3, 0.5, 2.5);
    for (const auto& s : system.objects())
      for (double eta : {1.0, 0.5, 0.25, 0.125}) {
        const bool fast = roundness_check(*cloud, s, eta).round();
        CHECK(fast == testing::brute_round(*cloud, s, eta));
        (fast ? round : not_round) += 1;
      }
  }
  CHECK(round > 0);
  CHECK(not_round > 0);
}

TEST_CASE("round spacefill bound") {
  CHECK(round_spacefill_bound(2, 1.0, 1.0) == 2);
  CHECK(round_spacefill_bound(3, 0.5, 3.0) == 27);
  CHECK(round_spacefill_bound(1, 0.25, 100.0) == 1);
  CHECK(round_spacefill_bound(2, 1.0, 2.0) == 4);   // ceil(log2 3) = 2
  CHECK(round_spacefill_bound(5, 0.5, 0.5) == 25);  // (1.5)/0.5 = 3, ceil(log2 3) = 2
  CHECK(round_spacefill_bound(7, 1.0, 0.0001) == 7);
  CHECK(round_spacefill_bound(10, 1.0 / 1024, 1023.0) == boost::multiprecision::pow(BigInt(10), 20));
  CHECK_THROWS(round_spacefill_bound(0, 1.0, 1.0));
  CHECK_THROWS(round_spacefill_bound(2, 0.0, 1.0));
  CHECK_THROWS(round_spacefill_bound(2, 1.0, 0.0));
}

TEST_CASE("doubling estimates") {
  const auto single = testing::line_space({3.0});
  CHECK(doubling_estimate(*single) == 1);

  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(i);
  const auto grid = testing::line_space(xs);
  const std::size_t estimate = doubling_estimate(*grid);
  CHECK(estimate >= 2);
  CHECK(estimate <= 4);
  CHECK(greedy_half_cover(*grid, 100, 10.0) <= 4);
  CHECK(greedy_half_cover(*grid, 100, 0.5) == 1);

  std::mt19937_64 rng(59);
  const auto plane = testing::random_cloud(rng, MetricKind::kL2, 2, 30, 5.0);
  const std::size_t small = doubling_estimate(*plane);
  std::size_t brute = 0;
  for (PointId x = 0; x < 30; ++x)
    for (PointId y = 0; y < 30; ++y) {
      const double d = plane->distance(x, y);
      if (d > 0) brute = std::max({brute, greedy_half_cover(*plane, x, d), greedy_half_cover(*plane, x, 2 * d)});
    }
  CHECK(small == brute);
}
