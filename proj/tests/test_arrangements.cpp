#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "zonelab/arrangements.hpp"
#include "zonelab/constructions.hpp"
#include "zonelab/errors.hpp"

using namespace zonelab;

namespace {

Arrangement random_arr(int d, int n, double t_lo, double t_hi, RandomSource& rng) {
  Arrangement arr(d);
  for (int i = 0; i < n; ++i) arr.add(Zone(sample_uniform(d, rng), t_lo + (t_hi - t_lo) * rng.uniform()));
  return arr;
}

}  // namespace

TEST_CASE("arrangement files round trip exactly") {
  RandomSource rng(2);
  for (int d : {3, 4, 6}) {
    const Arrangement arr = random_arr(d, 7, 0.05, 0.4, rng);
    std::stringstream ss;
    write_arrangement(ss, arr);
    CHECK(read_arrangement(ss) == arr);
  }
  std::stringstream empty_file;
  write_arrangement(empty_file, Arrangement(4));
  const Arrangement back = read_arrangement(empty_file);
  CHECK(back.dim() == 4);
  CHECK(back.empty());
}

TEST_CASE("malformed arrangement files") {
  const char* bad[] = {
      "",
      "d=3 n=1\n0 0 1 0.1\n",
      "# d=3 n=1\n0 0 one 0.1\n",
      "# d=3 n=1\n0 0 1\n",
      "# d=3 n=2\n0 0 1 0.1\n",
      "# d=3 n=1\n0 0 0 0.1\n",
      "# d=3 n=1\n0 0 1 2.0\n",
  };
  for (const char* text : bad) {
    std::stringstream ss(text);
    CHECK_THROWS_AS(read_arrangement(ss), ParseError);
  }
}

TEST_CASE("kind names") {
  CHECK(to_string(DepthKind::exact_s2) == "exact_s2");
  CHECK(to_string(CoverageKind::net_certified) == "net_certified");
  CHECK(to_string(CoverageKind::indeterminate) == "indeterminate");
}

TEST_CASE("net upper bound dominates the exact maximum on S^2") {
  RandomSource rng(12);
  NetOptions opts;
  opts.cover_slack = 1.0;
  const SaturatedNet net = build_saturated_net(3, 0.05, rng, 200, opts);
  const NetIndex index(3, net.flat());
  for (int trial = 0; trial < 100; ++trial) {
    const Arrangement arr = random_arr(3, 5 + trial % 40, 0.1, 0.3, rng);
    const DepthCertificate exact = exact_max_multiplicity_s2(arr);
    const DepthCertificate upper = net_multiplicity_upper_bound(arr, net, index, net.covering_radius());
    CHECK(upper.kind == DepthKind::net_upper_bound);
    CHECK(upper.value >= exact.value);
    RandomSource local(trial);
    const NetAnalysis a = analyze_with_net(arr, net, index, local);
    CHECK(a.upper.value >= exact.value);
    CHECK(a.lower.value <= exact.value);
    CHECK(arr.depth(a.lower.witness) == a.lower.value);

    const CoverageCertificate c = exact_coverage_s2(arr);
    CHECK(a.coverage.covered == c.covered);
    if (!a.coverage.covered) {
      REQUIRE(a.coverage.witness.has_value());
      CHECK(arr.depth(*a.coverage.witness) == 0);
    }
  }
}

TEST_CASE("net certificate argument checks") {
  RandomSource rng(1);
  const SaturatedNet net = build_saturated_net(3, 0.3, rng, 50);
  const Arrangement arr = orthogonal_zones(3, 0.5);
  CHECK_THROWS_AS(net_multiplicity_upper_bound(arr, net, 0.5 * net.covering_radius()), std::invalid_argument);
  CHECK_THROWS_AS(net_multiplicity_upper_bound(orthogonal_zones(4, 0.5), net, 1.0), DimensionMismatch);
  CHECK_THROWS_AS(exact_max_multiplicity_s2(orthogonal_zones(4, 0.5)), std::invalid_argument);
}

TEST_CASE("coverage of the empty arrangement fails with a witness") {
  const CoverageCertificate c = exact_coverage_s2(Arrangement(3));
  CHECK_FALSE(c.covered);
  CHECK(c.kind == CoverageKind::exact_s2);
  REQUIRE(c.witness.has_value());

  RandomSource rng(3);
  const SaturatedNet net = build_saturated_net(4, 0.3, rng, 50);
  const CoverageCertificate c4 = coverage_certificate(Arrangement(4), net, rng);
  CHECK_FALSE(c4.covered);
  CHECK(c4.witness.has_value());
}

TEST_CASE("orthogonal zones in S^3 cover exactly when sin t >= 1/2") {
  RandomSource rng(4);
  NetOptions opts;
  opts.cover_slack = 1.0;
  const SaturatedNet net = build_saturated_net(4, 0.08, rng, 100, opts);
  const NetIndex index(4, net.flat());
  RandomSource r1(1), r2(2);
  const NetAnalysis above = analyze_with_net(orthogonal_zones(4, std::asin(0.5) + 0.1), net, index, r1);
  CHECK(above.coverage.covered);
  CHECK(above.coverage.kind == CoverageKind::net_certified);
  const NetAnalysis below = analyze_with_net(orthogonal_zones(4, std::asin(0.5) - 0.1), net, index, r2);
  CHECK_FALSE(below.coverage.covered);
  REQUIRE(below.coverage.witness.has_value());
  CHECK(orthogonal_zones(4, std::asin(0.5) - 0.1).depth(*below.coverage.witness) == 0);
}

TEST_CASE("sampled lower bound is attained at its witness") {
  RandomSource rng(6);
  const Arrangement arr = random_arr(5, 30, 0.1, 0.3, rng);
  const DepthCertificate lb = sampled_lower_bound(arr, 5000, rng);
  CHECK(lb.kind == DepthKind::sampled_lower_bound);
  CHECK(arr.depth(lb.witness) == lb.value);
}

TEST_CASE("zones near a cap") {
  const Arrangement arr = orthogonal_zones(3, 0.1);
  const std::vector<double> c{1.0, 0.0, 0.0};
  const auto near = zones_near(arr, c, 0.05);
  CHECK(near == std::vector<std::size_t>{1, 2});
}

namespace {

Arrangement rotated(const Arrangement& arr, const double (&r)[3][3]) {
  Arrangement out(3);
  for (const Zone& z : arr.zones()) {
    std::vector<double> v(3, 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(i)] += r[i][j] * z.pole()[static_cast<std::size_t>(j)];
    }
    out.add(Zone(UnitVector::normalized(v), z.half_width()));
  }
  return out;
}

void random_rotation(RandomSource& rng, double (&r)[3][3]) {
  // Gram-Schmidt on Gaussian rows
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r[i][j] = rng.normal();
    for (int k = 0; k < i; ++k) {
      double dp = 0;
      for (int j = 0; j < 3; ++j) dp += r[i][j] * r[k][j];
      for (int j = 0; j < 3; ++j) r[i][j] -= dp * r[k][j];
    }
    double n = 0;
    for (int j = 0; j < 3; ++j) n += r[i][j] * r[i][j];
    for (int j = 0; j < 3; ++j) r[i][j] /= std::sqrt(n);
  }
}

}  // namespace

TEST_CASE("known multiplicities") {
  const DepthCertificate f5 = exact_max_multiplicity_s2(fejes_toth_configuration(3, 5, 0.2));
  CHECK(f5.value == 5);
  CHECK(fejes_toth_configuration(3, 5, 0.2 + 1e-8).depth(f5.witness) == 5);
  CHECK(exact_max_multiplicity_s2(orthogonal_zones(3, 0.3)).value == 2);
  CHECK(exact_max_multiplicity_s2(Arrangement(3)).value == 0);
  RandomSource rng(1);
  CHECK(interior_multiplicity_probe_s2(fejes_toth_configuration(3, 4, 0.2), 1000, rng) == 4);
  CHECK(interior_multiplicity_probe_s2(orthogonal_zones(3, 0.3), 1000, rng) == 2);
  CHECK_FALSE(exact_coverage_s2(fejes_toth_configuration(3, 1, std::numbers::pi / 2 - 1e-6)).covered);
}

TEST_CASE("net examples on S^2") {
  RandomSource rng(40);
  NetOptions opts;
  opts.cover_slack = 1.0;
  const SaturatedNet fine = build_saturated_net(3, 0.01, rng, 100, opts);
  const NetIndex index(3, fine.flat());
  const Arrangement arr = random_arr(3, 100, 0.02, 0.02, rng);
  CHECK(net_multiplicity_upper_bound(arr, fine, index, fine.covering_radius()).value >=
        exact_max_multiplicity_s2(arr).value);
  CHECK(net_multiplicity_upper_bound(fejes_toth_configuration(3, 5, 0.1), fine, index, fine.covering_radius()).value >=
        5);

  Arrangement single(3);
  single.add(Zone(UnitVector::axis(3, 2), 0.1));
  const DepthCertificate one = net_multiplicity_upper_bound(single, fine, index, fine.covering_radius());
  CHECK(one.value == 1);
  const NetAnalysis a = analyze_with_net(single, fine, index, rng);
  CHECK_FALSE(a.coverage.covered);
  REQUIRE(a.coverage.witness.has_value());
  CHECK(single.depth(*a.coverage.witness) == 0);

  const SaturatedNet finer = build_saturated_net(3, 0.005, rng, 100, opts);
  const NetAnalysis orth =
      analyze_with_net(orthogonal_zones(3, std::asin(1.0 / std::sqrt(3.0)) + 0.01), finer, NetIndex(3, finer.flat()), rng);
  CHECK(orth.coverage.covered);
  CHECK(orth.coverage.kind == CoverageKind::net_certified);
}

TEST_CASE("certificates are invariant under pole negation and rotation") {
  RandomSource rng(90);
  for (int trial = 0; trial < 30; ++trial) {
    const Arrangement arr = random_arr(3, 5 + trial, 0.1, 0.4, rng);
    Arrangement negated(3);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Zone& z = arr[i];
      negated.add(i % 2 ? Zone(-z.pole(), z.half_width()) : z);
    }
    const DepthCertificate base = exact_max_multiplicity_s2(arr);
    const bool covered = exact_coverage_s2(arr).covered;
    CHECK(exact_max_multiplicity_s2(negated).value == base.value);
    CHECK(exact_coverage_s2(negated).covered == covered);

    double r[3][3];
    random_rotation(rng, r);
    const Arrangement turned = rotated(arr, r);
    CHECK(exact_max_multiplicity_s2(turned).value == base.value);
    CHECK(exact_coverage_s2(turned).covered == covered);
  }
}

TEST_CASE("growing every zone never lowers multiplicity or uncovers") {
  RandomSource rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    const Arrangement arr = random_arr(3, 5 + trial, 0.1, 0.4, rng);
    std::vector<Zone> grown;
    for (const Zone& z : arr.zones()) grown.push_back(z.with_half_width(z.half_width() + 0.05));
    const Arrangement big(3, grown);
    CHECK(exact_max_multiplicity_s2(big).value >= exact_max_multiplicity_s2(arr).value);
    if (exact_coverage_s2(arr).covered) CHECK(exact_coverage_s2(big).covered);
  }
}
