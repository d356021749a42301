#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zonelab/random.hpp"
#include "zonelab/sphere.hpp"

namespace zonelab {

enum class AlphaKind { log_over_n, one_over_n, power_law };
enum class KRule { A_d_log_n, B_d_log_over_loglog, constant };

std::string to_string(AlphaKind k);
std::string to_string(KRule k);

struct ExperimentParams {
  int d = 3;
  std::int64_t n = 1000;
  AlphaKind alpha_kind = AlphaKind::log_over_n;
  double delta = 0.0;  // power_law: alpha(n) = n^-(1+delta)
  KRule k_rule = KRule::A_d_log_n;
  double k_constant = 0.0;  // constant rule; 0 picks the smallest integer the bound allows
  int trials = 1;
  std::uint64_t master_seed = 1;
  double net_omega = 0.0;  // 0: half_width / 2
  double net_cover_slack = 1.25;
  std::uint64_t net_rejections = 100;
  std::size_t net_point_limit = 6'000'000;  // above this estimate, fall back to sampling
  std::size_t coverage_probes = 100000;
  std::size_t lower_bound_samples = 100000;
  int threads = 1;
};

double alpha_value(AlphaKind kind, double delta, std::int64_t n);
/// m_d * alpha(n).
double zone_half_width(const ExperimentParams& p);
/// The k(n) the multiplicity is compared against.
double k_threshold(const ExperimentParams& p);
/// max{e C*_d, d - 1} + 1.
double B_d(int d);
/// Smallest integer k > (d-1)/delta + d - 1.
int corollary_i_k(int d, double delta);

struct TrialOutcome {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  std::optional<bool> covered;  // empty: indeterminate or not assessed
  std::string coverage_kind;
  std::optional<int> max_multiplicity_upper;
  int max_multiplicity_lower = 0;
  std::string upper_kind;
  std::optional<bool> multiplicity_ok;  // upper <= k(n); empty without an upper bound
};

struct ExperimentSummary {
  std::string experiment;
  ExperimentParams params;
  std::string mode;  // engine used for multiplicity
  double alpha = 0, half_width = 0, k = 0;
  double A_d = 0, B_d = 0, C_star_d = 0, c_d = 0;
  double log10_bound = 0;  // log10 of the probability-bound expression at (n, alpha, k)
  bool k_exceeds_n = false;
  double net_omega = 0, net_covering_radius = 0;
  std::size_t net_size = 0;
  bool net_certified = false;
  std::vector<TrialOutcome> per_trial;
  double covered_fraction = 0;
  double multiplicity_ok_fraction = 0;
  std::map<int, int> multiplicity_histogram;  // certified value -> trial count
  std::vector<std::string> notes;
  double wall_time_seconds = 0;
};

Arrangement random_arrangement(int d, std::int64_t n, double half_width, RandomSource& rng);

ExperimentSummary run_theorem3_experiment(const ExperimentParams& params);
ExperimentSummary run_corollary_experiment(const ExperimentParams& params);

struct BoundValue {
  double ln_value = 0;
  bool k_exceeds_n = false;
  double log10() const;
};

/// c_d alpha^{-(d-1)} (e C*_d n alpha / k)^k, in log space.
BoundValue multiplicity_bound_expression(int d, double n, double alpha, double k);

double solve_A_d(int d);

/// k (1 + ln n - ln k) >= ln C(n, k).
double binomial_upper_bound(std::int64_t n, std::int64_t k);

/// Smallest n in [lo, hi] (scanned geometrically, `per_decade` points per
/// decade) after which the Theorem 3 bound stays below 1 with k <= n;
/// 0 if none.
std::int64_t theorem3_bound_onset(int d, std::int64_t lo, std::int64_t hi, int per_decade = 20);

}  // namespace zonelab
