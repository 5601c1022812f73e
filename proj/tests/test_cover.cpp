#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support.hpp"
#include "weakdiam/cover.hpp"
#include "weakdiam/serial.hpp"

using namespace weakdiam;

TEST_CASE("one-dimensional grid cover layout") {
  const auto space = testing::line_space({0.3, 1.9, 2.1, 5.0, 7.99});
  const Cover cover = shifted_grid_cover(*space, 1.0);
  CHECK(cover.side == 4.0);
  REQUIRE(cover.family_count() == 2);
  CHECK(cover.shifts[0] == std::vector<double>{0.0});
  CHECK(cover.shifts[1] == std::vector<double>{2.0});
  CHECK(cover.mesh_constant == 4.0);

  const auto where = cells_containing(cover, space->size());
  const Cell& first = cover.families[0][where[0][0].second];
  CHECK(first.lattice == std::vector<std::int64_t>{0});
  CHECK(first.members == PointSet{0, 1, 2});
  for (PointId p = 0; p < space->size(); ++p) CHECK(where[p].size() == 2);
}

TEST_CASE("mesh constants") {
  CHECK(grid_mesh_constant(MetricKind::kLinf, 2, CoverConstruction::kDiagonal) == 6.0);
  CHECK(grid_mesh_constant(MetricKind::kL2, 3, CoverConstruction::kDiagonal) == doctest::Approx(8.0 * std::sqrt(3.0)));
  CHECK(grid_mesh_constant(MetricKind::kLinf, 3, CoverConstruction::kProduct) == 4.0);
  CHECK(grid_family_count(3, CoverConstruction::kProduct) == 8);
  CHECK(grid_family_count(3, CoverConstruction::kDiagonal) == 4);
}

TEST_CASE("grid covers verify on random clouds") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto kind : {MetricKind::kL2, MetricKind::kLinf})
      for (auto construction : {CoverConstruction::kDiagonal, CoverConstruction::kProduct}) {
        const auto space = testing::random_cloud(rng, kind, n, 300, 10.0);
        for (int trial = 0; trial < 3; ++trial) {
          const double r = radius(rng);
          const Cover cover = shifted_grid_cover(*space, r, construction);
          const auto report = verify_cover(*space, cover, r, cover.mesh_constant);
          CHECK_MESSAGE(report.valid(), report.describe());
          CHECK_FALSE(serial::lebesgue_failure(*space, cover, r).has_value());
          std::size_t members = 0;
          for (const auto& family : cover.families)
            for (const auto& cell : family) members += cell.members.size();
          CHECK(members == cover.family_count() * space->size());
        }
      }
}

TEST_CASE("grid cover errors") {
  const auto matrix = Space::from_matrix(2, {0, 1, 1, 0});
  CHECK_THROWS_AS(shifted_grid_cover(matrix, 1.0), std::invalid_argument);
  const auto space = testing::line_space({0, 1});
  CHECK_THROWS_AS(shifted_grid_cover(*space, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(shifted_grid_cover(*space, -2.0), std::invalid_argument);
}

TEST_CASE("verify_cover finds constructed violations") {
  const auto space = testing::line_space({0, 1, 2, 3});

  const Cover overlapping = explicit_cover(10.0, 0.5, {{PointSet{0, 1}, PointSet{1, 2, 3}}});
  const auto a = verify_cover(*space, overlapping, 0.5, 10.0);
  REQUIRE(a.overlap.has_value());
  CHECK(a.overlap->point == 1);

  const Cover wide = explicit_cover(1.0, 0.5, {{PointSet{0, 1, 2, 3}}});
  const auto b = verify_cover(*space, wide, 0.5, 1.0);
  REQUIRE(b.mesh.has_value());
  CHECK(b.mesh->diameter == 3.0);

  const Cover split = explicit_cover(10.0, 1.0, {{PointSet{0, 1}, PointSet{2, 3}}});
  const auto c = verify_cover(*space, split, 1.0, 10.0);
  REQUIRE(c.lebesgue.has_value());
  CHECK((*c.lebesgue == 1 || *c.lebesgue == 2));
  CHECK(serial::lebesgue_failure(*space, split, 1.0) == c.lebesgue);

  const auto isolated = testing::line_space({0, 10});
  const Cover singles = explicit_cover(2.0, 1.0, {{PointSet{0}, PointSet{1}}});
  CHECK(verify_cover(*isolated, singles, 1.0, 2.0).valid());
}

TEST_CASE("explicit covers drop empty cells") {
  const Cover c = explicit_cover(3.0, 1.0, {{PointSet{0}, PointSet{}}, {PointSet{1}}});
  CHECK(c.cell_count() == 2);
  CHECK(c.explicit_cells);
}

TEST_CASE("scale index") {
  CHECK(scale_index(4.0, 1.0) == 1);
  CHECK(scale_index(4.0, 4.5) == 2);
  CHECK(scale_index(4.0, 0.5) == 1);
  CHECK(scale_index(4.0, 0.4) == 0);
  CHECK(half_scale(4.0, 2) == 40.5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> exponent(-8.0, 8.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double k = 1.5 + trial % 7;
    const double d = std::exp(exponent(rng));
    const int l = scale_index(k, d);
    CHECK(half_scale(k, l - 1) <= d);
    CHECK(d < half_scale(k, l));
  }
}
