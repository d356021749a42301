#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "zonelab/montecarlo.hpp"

using namespace zonelab;

namespace {

constexpr double kPi = std::numbers::pi;

double kappa(int d) { return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

// c_d alpha^{-(d-1)} (e C* n alpha / k)^k written out from the ball volumes
double reference_log_bound(int d, double n, double alpha, double k) {
  const double m = std::sqrt(2.0 * kPi * d) + 1.0;
  const double c = 2.0 * std::pow(2.0, (d - 1) / 2.0) * d * kappa(d) / kappa(d - 1);
  const double cstar = 4.0 * (m + 1.0) * (d - 1) * kappa(d - 1) / (d * kappa(d));
  return std::log(c) - (d - 1) * std::log(alpha) + k * std::log(std::numbers::e * cstar * n * alpha / k);
}

bool same_trials(const ExperimentSummary& a, const ExperimentSummary& b) {
  if (a.per_trial.size() != b.per_trial.size()) return false;
  for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
    const TrialOutcome& x = a.per_trial[i];
    const TrialOutcome& y = b.per_trial[i];
    if (x.seed != y.seed || x.covered != y.covered || x.coverage_kind != y.coverage_kind ||
        x.max_multiplicity_upper != y.max_multiplicity_upper || x.max_multiplicity_lower != y.max_multiplicity_lower ||
        x.multiplicity_ok != y.multiplicity_ok) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("random arrangements are reproducible") {
  RandomSource a(9), b(9);
  CHECK(random_arrangement(4, 50, 0.1, a) == random_arrangement(4, 50, 0.1, b));
  RandomSource c(9);
  CHECK(random_arrangement(3, 0, 0.1, c).empty());
  CHECK_THROWS_AS(random_arrangement(3, 5, 0.0, c), std::invalid_argument);
  CHECK_THROWS_AS(random_arrangement(3, -1, 0.1, c), std::invalid_argument);
}

TEST_CASE("a fixed point lies in a random zone with probability sin t") {
  RandomSource rng(77);
  const int N = 100000;
  const double t = 0.1;
  const Arrangement arr = random_arrangement(3, N, t, rng);
  const int hits = arr.depth(UnitVector::axis(3, 0));
  const double p = std::sin(t);
  const double sigma = std::sqrt(p * (1 - p) / N);
  CHECK(std::abs(hits / static_cast<double>(N) - p) <= 4.0 * sigma);
}

TEST_CASE("alpha, half-width and k rules") {
  CHECK(alpha_value(AlphaKind::log_over_n, 0, 1000) == doctest::Approx(std::log(1000.0) / 1000.0));
  CHECK(alpha_value(AlphaKind::one_over_n, 0, 50) == doctest::Approx(0.02));
  CHECK(alpha_value(AlphaKind::power_law, 0.5, 100) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(alpha_value(AlphaKind::one_over_n, 0, 1), std::invalid_argument);

  ExperimentParams p;
  p.d = 3;
  p.n = 1000;
  CHECK(zone_half_width(p) == doctest::Approx((std::sqrt(6.0 * kPi) + 1.0) * std::log(1000.0) / 1000.0));
  CHECK(k_threshold(p) == doctest::Approx(solve_A_d(3) * std::log(1000.0)));

  CHECK(corollary_i_k(3, 3.0) == 3);
  CHECK(corollary_i_k(3, 1.0) == 5);
  CHECK(corollary_i_k(4, 0.5) == 10);
  CHECK_THROWS_AS(corollary_i_k(3, 0.0), std::invalid_argument);

  for (int d = 3; d <= 10; ++d) {
    const double cstar = constants(d).C_star_d;
    CHECK(B_d(d) == doctest::Approx(std::max(std::numbers::e * cstar, d - 1.0) + 1.0));
  }
}

TEST_CASE("bound expression against a direct evaluation") {
  for (int d : {3, 4, 7}) {
    for (double n : {1e3, 1e5, 1e7}) {
      const double alpha = std::log(n) / n;
      for (double k : {5.0, 50.0, 500.0}) {
        const BoundValue b = multiplicity_bound_expression(d, n, alpha, k);
        CHECK(b.ln_value == doctest::Approx(reference_log_bound(d, n, alpha, k)).epsilon(1e-12));
        CHECK(b.k_exceeds_n == (k > n));
        CHECK(b.log10() == doctest::Approx(b.ln_value / std::log(10.0)));
      }
    }
  }
  CHECK_THROWS_AS(multiplicity_bound_expression(3, 100, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(multiplicity_bound_expression(3, 100, 1.5, 2), std::invalid_argument);
}

TEST_CASE("theorem 3 bound decreases in n and falls below one") {
  for (int d : {3, 4, 5}) {
    const double A = solve_A_d(d);
    double prev = std::numeric_limits<double>::infinity();
    for (double n = 1e3; n <= 1e6 * 1.0001; n *= std::pow(10.0, 0.25)) {
      const double alpha = std::log(n) / n;
      const double v = multiplicity_bound_expression(d, n, alpha, A * std::log(n)).ln_value;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 0.0);
  }
}

TEST_CASE("k = n makes the bound small for large n") {
  for (int d : {3, 4}) {
    for (double n : {1e4, 1e5, 1e6}) {
      CHECK(multiplicity_bound_expression(d, n, std::log(n) / n, n).ln_value < 0.0);
    }
  }
}

TEST_CASE("bound decreases in k beyond C* n alpha") {
  const int d = 3;
  const double n = 1e5, alpha = std::log(n) / n;
  const double start = constants(d).C_star_d * n * alpha;
  double prev = multiplicity_bound_expression(d, n, alpha, start * 1.01).ln_value;
  for (double k = start * 1.02; k < start * 20; k *= 1.02) {
    const double v = multiplicity_bound_expression(d, n, alpha, k).ln_value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("A_d solves its equation and grows linearly") {
  double prev = 0;
  for (int d = 3; d <= 100; ++d) {
    const double A = solve_A_d(d);
    const double cstar = constants(d).C_star_d;
    REQUIRE(A > std::numbers::e * cstar);
    CHECK(std::abs(A * (std::log(A) - std::log(cstar) - 1.0) - d) <= 1e-8 * d);
    CHECK(A > prev);
    CHECK(A / d < 15.0);
    prev = A;
  }
  CHECK(solve_A_d(3) == doctest::Approx(37.359).epsilon(1e-4));
  CHECK(solve_A_d(4) == doctest::Approx(52.397).epsilon(1e-4));
}

TEST_CASE("binomial bound dominates ln C(n, k)") {
  CHECK(binomial_upper_bound(10, 3) >= std::log(120.0));
  for (std::int64_t n : {5, 20, 200, 5000}) {
    for (std::int64_t k = 1; k <= n; k += std::max<std::int64_t>(1, n / 17)) {
      const double ln_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      CHECK(binomial_upper_bound(n, k) >= ln_choose - 1e-9);
    }
  }
  CHECK_THROWS_AS(binomial_upper_bound(5, 6), std::invalid_argument);
}

TEST_CASE("bound onset is finite and consistent") {
  for (int d : {3, 4}) {
    const std::int64_t onset = theorem3_bound_onset(d, 10, 1'000'000);
    REQUIRE(onset > 0);
    CHECK(onset <= 1'000'000);
    const double A = solve_A_d(d);
    for (double n : {static_cast<double>(onset), onset * 3.0, onset * 100.0}) {
      const double k = A * std::log(n);
      CHECK(k <= n);
      CHECK(multiplicity_bound_expression(d, n, std::log(n) / n, k).ln_value < 0.0);
    }
  }
}

TEST_CASE("experiments are reproducible and independent of thread count") {
  ExperimentParams p;
  p.d = 3;
  p.n = 1000;
  p.trials = 3;
  p.master_seed = 5;
  p.coverage_probes = 2000;
  const ExperimentSummary a = run_theorem3_experiment(p);
  p.threads = 3;
  const ExperimentSummary b = run_theorem3_experiment(p);
  CHECK(a.mode == "net_upper_bound");
  CHECK(same_trials(a, b));
  for (const TrialOutcome& t : a.per_trial) {
    REQUIRE(t.max_multiplicity_upper.has_value());
    CHECK(*t.max_multiplicity_upper >= t.max_multiplicity_lower);
  }
  CHECK(a.k == doctest::Approx(solve_A_d(3) * std::log(1000.0)));
}

TEST_CASE("small corollary run on S^2") {
  ExperimentParams p;
  p.d = 3;
  p.n = 200;
  p.alpha_kind = AlphaKind::power_law;
  p.delta = 3.0;
  p.k_rule = KRule::constant;
  p.trials = 20;
  const ExperimentSummary s = run_corollary_experiment(p);
  CHECK(s.experiment == "corollary-i");
  CHECK(s.mode == "exact_s2");
  CHECK(s.k == 3.0);
  int total = 0;
  for (const auto& [value, count] : s.multiplicity_histogram) total += count;
  CHECK(total == 20);
  CHECK(s.multiplicity_ok_fraction >= 0.5);

  ExperimentParams bad = p;
  bad.alpha_kind = AlphaKind::log_over_n;
  CHECK_THROWS_AS(run_corollary_experiment(bad), std::invalid_argument);
  bad = p;
  bad.n = 1;
  CHECK_THROWS_AS(run_corollary_experiment(bad), std::invalid_argument);
}

TEST_CASE("binomial bound edge cases") {
  for (std::int64_t n : {1, 7, 1000}) {
    CHECK(binomial_upper_bound(n, n) >= 0.0);
    CHECK(binomial_upper_bound(n, 1) == doctest::Approx(1.0 + std::log(static_cast<double>(n))));
  }
}

TEST_CASE("bound stays below one and decreasing past the onset") {
  for (int d : {3, 4}) {
    const std::int64_t onset = theorem3_bound_onset(d, 10, 1'000'000);
    REQUIRE(onset > 0);
    const double A = solve_A_d(d);
    double prev = std::numeric_limits<double>::infinity();
    for (double n = static_cast<double>(onset); n <= 1e6; n *= 1.1) {
      const double v = multiplicity_bound_expression(d, n, std::log(n) / n, A * std::log(n)).ln_value;
      CHECK(v < 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("tiny zones rarely overlap more than d times") {
  ExperimentParams p;
  p.d = 3;
  p.n = 300;
  p.alpha_kind = AlphaKind::power_law;
  p.delta = 10.0;
  p.k_rule = KRule::constant;
  p.trials = 20;
  const ExperimentSummary s = run_corollary_experiment(p);
  CHECK(s.multiplicity_ok_fraction >= 0.95);
  CHECK(s.multiplicity_histogram.rbegin()->first <= 3);
}

TEST_CASE("alpha = 1/n stays below B_d ln n / ln ln n") {
  ExperimentParams p;
  p.d = 3;
  p.n = 2000;
  p.alpha_kind = AlphaKind::one_over_n;
  p.k_rule = KRule::B_d_log_over_loglog;
  p.trials = 2;
  const ExperimentSummary s = run_corollary_experiment(p);
  CHECK(s.experiment == "corollary-ii");
  CHECK(s.k == doctest::Approx(B_d(3) * std::log(2000.0) / std::log(std::log(2000.0))));
  CHECK(s.multiplicity_ok_fraction == 1.0);
}
