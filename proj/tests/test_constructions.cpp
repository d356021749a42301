#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zonelab/arrangements.hpp"
#include "zonelab/constructions.hpp"

using namespace zonelab;

TEST_CASE("construction shapes") {
  const Arrangement f = fejes_toth_configuration(3, 4, 0.2);
  CHECK(f.size() == 4);
  for (const Zone& z : f.zones()) CHECK(std::abs(z.pole()[2]) < 1e-15);
  CHECK(pole_plus_equator(0.5).size() == 4);
  CHECK(tilted_five_zones(0.5, 0.1).size() == 5);
  CHECK(orthogonal_zones(5, 0.3).size() == 5);
  CHECK_THROWS_AS(fejes_toth_configuration(4, 3, 0.2), std::invalid_argument);
}

TEST_CASE("Fejes Toth configuration at pi/(2n) covers with depth n at the poles") {
  for (int n = 2; n <= 8; ++n) {
    const double t = std::numbers::pi / (2.0 * n);
    const Arrangement arr = fejes_toth_configuration(3, n, t * (1.0 + 1e-9));
    CHECK(exact_coverage_s2(arr).covered);
    CHECK(exact_max_multiplicity_s2(arr).value == n);
    CHECK_FALSE(exact_coverage_s2(fejes_toth_configuration(3, n, t * 0.999)).covered);
  }
}

TEST_CASE("multiplicity-3 window of the pole-plus-equator family") {
  const Multiplicity3Window w = find_multiplicity3_width();
  REQUIRE(w.nonempty());
  // independent geometry: coverage switches at atan(1/2), depth 4 at atan(sqrt(3)/2)
  CHECK(w.t_lo() == doctest::Approx(std::atan(0.5)).epsilon(1e-8));
  CHECK(w.t_hi() == doctest::Approx(std::atan(std::sqrt(3.0) / 2.0)).epsilon(1e-8));
  CHECK(w.coverage.hi - w.coverage.lo <= 1e-10);
  CHECK(w.onset.hi - w.onset.lo <= 1e-10);

  const double mid = 0.5 * (w.t_lo() + w.t_hi());
  const Arrangement arr = pole_plus_equator(mid);
  CHECK(exact_coverage_s2(arr).covered);
  CHECK(exact_max_multiplicity_s2(arr).value == 3);
}

TEST_CASE("tilted five-zone witness") {
  const TiltedFiveWitness w = find_tilted_five_witness();
  REQUIRE(w.found);
  REQUIRE(w.window.nonempty());
  CHECK(w.half_width > w.window.t_lo());
  CHECK(w.half_width < w.window.t_hi());
  const Arrangement arr = tilted_five_zones(w.half_width, w.tilt);
  CHECK(exact_coverage_s2(arr).covered);
  CHECK(exact_max_multiplicity_s2(arr).value == 3);
}

TEST_CASE("orthogonal coverage threshold on S^2") {
  const Bracket b = orthogonal_coverage_threshold();
  const double expected = std::asin(1.0 / std::sqrt(3.0));
  CHECK(std::abs(b.lo - expected) <= 1e-9);
  CHECK(std::abs(b.hi - expected) <= 1e-9);
  CHECK(b.hi - b.lo <= 1e-10);
}

TEST_CASE("bisection on a monotone predicate") {
  const Bracket b = bisect_switch([](double x) { return x >= 0.3; }, 0.0, 1.0, 1e-12);
  CHECK(b.lo < 0.3);
  CHECK(b.hi >= 0.3);
  CHECK(b.hi - b.lo <= 1e-12);
  CHECK_THROWS(bisect_switch([](double) { return true; }, 0.0, 1.0, 1e-6));
}

TEST_CASE("orthogonal zones just below the threshold leave the diagonal uncovered") {
  const double threshold = std::asin(1.0 / std::sqrt(3.0));
  const CoverageCertificate c = exact_coverage_s2(orthogonal_zones(3, threshold - 1e-9));
  REQUIRE_FALSE(c.covered);
  REQUIRE(c.witness.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs((*c.witness)[i]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-3));
  }
  CHECK(exact_coverage_s2(orthogonal_zones(3, threshold + 1e-9)).covered);
}

TEST_CASE("orthogonal zones: no point is interior to all three below pi/4") {
  RandomSource rng(8);
  for (double t : {0.3, 0.5, 0.6}) {
    CHECK(interior_multiplicity_probe_s2(orthogonal_zones(3, t), 20000, rng) <= 2);
  }
}

TEST_CASE("pole-plus-equator limits and window edges") {
  const Arrangement thin = pole_plus_equator(1e-3);
  CHECK_FALSE(exact_coverage_s2(thin).covered);
  const DepthCertificate poles = exact_max_multiplicity_s2(thin);
  CHECK(poles.value == 3);
  CHECK(std::abs(poles.witness[2]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(exact_max_multiplicity_s2(pole_plus_equator(1.5)).value == 4);

  const Multiplicity3Window w = find_multiplicity3_width();
  CHECK_FALSE(exact_coverage_s2(pole_plus_equator(w.t_lo() - 1e-6)).covered);
  CHECK(exact_max_multiplicity_s2(pole_plus_equator(w.t_hi() + 1e-6)).value >= 4);
}

TEST_CASE("tilted five zones") {
  // no tilt: the doubled equatorial zone meets three meridian zones
  CHECK(exact_max_multiplicity_s2(tilted_five_zones(0.5, 0.0)).value >= 4);
  // coverage only switches on once as the zones widen
  for (double tilt : {0.05, 0.2}) {
    bool seen = false;
    for (double t = 0.3; t < 0.8; t += 0.01) {
      const bool covered = exact_coverage_s2(tilted_five_zones(t, tilt)).covered;
      CHECK_FALSE((seen && !covered));
      seen = seen || covered;
    }
    CHECK(seen);
  }
}
