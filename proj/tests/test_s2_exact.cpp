#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zonelab/constructions.hpp"
#include "zonelab/s2_exact.hpp"

using namespace zonelab;

namespace {

Arrangement random_s2(int n, double t_lo, double t_hi, RandomSource& rng) {
  Arrangement arr(3);
  for (int i = 0; i < n; ++i) arr.add(Zone(sample_uniform(3, rng), t_lo + (t_hi - t_lo) * rng.uniform()));
  return arr;
}

int brute_max_depth(const Arrangement& arr, int samples, RandomSource& rng) {
  int best = 0;
  for (int i = 0; i < samples; ++i) best = std::max(best, arr.depth(sample_uniform(3, rng)));
  return best;
}

}  // namespace

TEST_CASE("circle intersection") {
  const s2::Circle a{{0, 0, 1}, 0.0}, b{{1, 0, 0}, 0.0};
  const s2::CircleIntersection x = s2::intersect(a, b);
  REQUIRE(x.count == 2);
  for (const s2::Vec3& p : x.points) {
    CHECK(std::abs(p[0]) < 1e-14);
    CHECK(std::abs(p[2]) < 1e-14);
    CHECK(std::abs(std::abs(p[1]) - 1.0) < 1e-14);
  }
  const s2::Circle far{{0, 0, 1}, 0.9}, other{{0, 0, -1}, 0.9};
  CHECK(s2::intersect(far, other).count == 0);
  CHECK(s2::boundary_circles(orthogonal_zones(3, 0.2)).size() == 6);
}

TEST_CASE("exact depth never falls below dense sampling and is attained") {
  RandomSource rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Arrangement arr = random_s2(3 + trial % 12, 0.1, 0.5, rng);
    const s2::DepthResult exact = s2::max_closed_depth(arr);
    RandomSource probe(1000 + static_cast<std::uint64_t>(trial));
    const int sampled = brute_max_depth(arr, 20000, probe);
    CHECK(exact.depth >= sampled);
    // the witness itself lies in that many zones, allowing for the tie tolerance
    const Arrangement fat(3, [&] {
      std::vector<Zone> z;
      for (const Zone& q : arr.zones()) z.push_back(q.with_half_width(q.half_width() + 1e-8));
      return z;
    }());
    CHECK(fat.depth(std::span<const double>(exact.witness)) >= exact.depth);
  }
}

TEST_CASE("known depths") {
  // n meridian zones through the poles: the poles lie in all of them
  CHECK(s2::max_closed_depth(fejes_toth_configuration(3, 5, 0.1)).depth == 5);
  // disjoint slabs about one axis meet no more than one at a time
  Arrangement single(3);
  single.add(Zone(UnitVector::axis(3, 2), 0.3));
  CHECK(s2::max_closed_depth(single).depth == 1);
  CHECK(s2::max_closed_depth(Arrangement(3)).depth == 0);
  CHECK(s2::max_closed_depth(orthogonal_zones(3, 0.2)).depth == 2);
  CHECK(s2::max_closed_depth(orthogonal_zones(3, 0.7)).depth == 3);
}

TEST_CASE("coverage witnesses are genuinely uncovered") {
  RandomSource rng(23);
  int uncovered = 0, covered = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Arrangement arr = random_s2(4 + trial % 20, 0.1, 0.6, rng);
    const s2::CoverageResult c = s2::exact_coverage(arr);
    if (c.covered) {
      ++covered;
      CHECK_FALSE(c.witness.has_value());
      RandomSource probe(7 + static_cast<std::uint64_t>(trial));
      for (int i = 0; i < 20000; ++i) REQUIRE(arr.depth(sample_uniform(3, probe)) >= 1);
    } else {
      ++uncovered;
      REQUIRE(c.witness.has_value());
      CHECK(arr.depth(std::span<const double>(*c.witness)) == 0);
    }
  }
  CHECK(covered > 0);
  CHECK(uncovered > 0);
}

TEST_CASE("coverage of simple configurations") {
  CHECK_FALSE(s2::exact_coverage(Arrangement(3)).covered);
  // three orthogonal zones cover exactly when sin t >= 1/sqrt 3
  const double threshold = std::asin(1.0 / std::sqrt(3.0));
  CHECK(s2::exact_coverage(orthogonal_zones(3, threshold + 1e-6)).covered);
  CHECK_FALSE(s2::exact_coverage(orthogonal_zones(3, threshold - 1e-6)).covered);
}

TEST_CASE("cap coverage restricted to nearby zones") {
  const Arrangement arr = orthogonal_zones(3, 0.3);
  std::vector<std::size_t> all{0, 1, 2};
  // a cap around e_1 inside the zone of e_2
  const s2::Vec3 center{1.0, 0.0, 0.0};
  CHECK(s2::cap_coverage(arr, all, center, 0.2).covered);
  // a cap about the diagonal misses every zone
  const double r = 1.0 / std::sqrt(3.0);
  const s2::CoverageResult c = s2::cap_coverage(arr, all, {r, r, r}, 0.05);
  CHECK_FALSE(c.covered);
  REQUIRE(c.witness.has_value());
  CHECK(arr.depth(std::span<const double>(*c.witness)) == 0);
}

TEST_CASE("interior probe is a lower bound on closed depth") {
  RandomSource rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Arrangement arr = random_s2(10, 0.1, 0.4, rng);
    RandomSource probe(trial);
    s2::Vec3 w{};
    const int lower = s2::interior_depth_probe(arr, 2000, probe, &w);
    CHECK(lower <= s2::max_closed_depth(arr).depth);
    CHECK(arr.depth(std::span<const double>(w), Boundary::open) == lower);
  }
}
