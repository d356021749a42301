#include "zonelab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "zonelab/arrangements.hpp"
#include "zonelab/net_index.hpp"
#include "zonelab/nets.hpp"

namespace zonelab {

namespace {

constexpr double kPi = std::numbers::pi;
// Stream index reserved for the net, disjoint from trial indices.
constexpr std::uint64_t kNetStream = ~std::uint64_t{0};

void check_params(const ExperimentParams& p) {
  if (p.d < 3) throw std::invalid_argument("experiments need d >= 3");
  if (p.n < 2) throw std::invalid_argument("experiments need n >= 2");
  if (p.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (p.alpha_kind == AlphaKind::power_law && !(p.delta > 0.0)) {
    throw std::invalid_argument("power_law needs delta > 0");
  }
  const double a = alpha_value(p.alpha_kind, p.delta, p.n);
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("alpha(n) must lie in (0, 1]");
  if (!(zone_half_width(p) < kPi / 2)) throw std::invalid_argument("m_d * alpha(n) must be < pi/2; increase n");
}

// About half the packing bound area / kappa_{d-1} (omega/2)^{d-1}; measured
// saturated nets sit near that.
double estimated_net_size(int d, double omega) {
  return 0.5 * sphere_area(d) / (unit_ball_volume(d - 1) * std::pow(0.5 * omega, d - 1));
}

int worker_count(int requested, int trials) {
  int w = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::clamp(w, 1, trials);
}

// Runs body(i) for every trial; results land in slot i so the outcome is
// independent of the schedule.
template <class Body>
void for_each_trial(int trials, int threads, Body body) {
  const int workers = worker_count(threads, trials);
  if (workers == 1) {
    for (int i = 0; i < trials; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < trials;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void fill_constants(ExperimentSummary& s) {
  const auto& p = s.params;
  const PaperConstants c = constants(p.d);
  s.alpha = alpha_value(p.alpha_kind, p.delta, p.n);
  s.half_width = c.m_d * s.alpha;
  s.k = k_threshold(p);
  s.A_d = c.A_d;
  s.B_d = B_d(p.d);
  s.C_star_d = c.C_star_d;
  s.c_d = c.c_d;
  if (s.alpha < 1.0) {
    const BoundValue b = multiplicity_bound_expression(p.d, static_cast<double>(p.n), s.alpha, s.k);
    s.log10_bound = b.log10();
    s.k_exceeds_n = b.k_exceeds_n;
  }
}

void aggregate(ExperimentSummary& s) {
  int covered = 0, ok = 0;
  for (const TrialOutcome& t : s.per_trial) {
    if (t.covered.value_or(false)) ++covered;
    if (t.multiplicity_ok.value_or(false)) ++ok;
    if (t.max_multiplicity_upper) ++s.multiplicity_histogram[*t.max_multiplicity_upper];
  }
  const double n = static_cast<double>(s.per_trial.size());
  s.covered_fraction = covered / n;
  s.multiplicity_ok_fraction = ok / n;
}

struct NetContext {
  std::optional<SaturatedNet> net;
  std::optional<NetIndex> index;
};

// Builds the shared net when it is affordable; records why not otherwise.
NetContext prepare_net(ExperimentSummary& s) {
  const auto& p = s.params;
  NetContext ctx;
  const double omega = p.net_omega > 0.0 ? p.net_omega : 0.5 * s.half_width;
  if (!(omega < s.half_width)) throw std::invalid_argument("net omega must be < the zone half-width");
  if (p.d > 4) {
    s.notes.push_back("d >= 5: net size explodes, multiplicities are sampled lower bounds only");
    return ctx;
  }
  const double est = estimated_net_size(p.d, omega);
  if (est > static_cast<double>(p.net_point_limit)) {
    s.notes.push_back("estimated net size " + std::to_string(static_cast<long long>(est)) +
                      " exceeds the point limit; multiplicities are sampled lower bounds only");
    return ctx;
  }
  RandomSource rng(derive_seed(p.master_seed, kNetStream));
  NetOptions opts;
  opts.cover_slack = p.net_cover_slack;
  ctx.net.emplace(build_saturated_net(p.d, omega, rng, p.net_rejections, opts));
  if (!(ctx.net->covering_radius() < s.half_width)) {
    throw std::invalid_argument("net covering radius must be < the zone half-width; lower net omega");
  }
  ctx.index.emplace(p.d, ctx.net->flat());
  s.net_omega = omega;
  s.net_size = ctx.net->size();
  s.net_covering_radius = ctx.net->covering_radius();
  s.net_certified = ctx.net->covering_certified();
  return ctx;
}

void finish_upper(TrialOutcome& out, int upper, const std::string& kind, double k) {
  out.max_multiplicity_upper = upper;
  out.upper_kind = kind;
  out.multiplicity_ok = upper <= k;
}

}  // namespace

std::string to_string(AlphaKind k) {
  switch (k) {
    case AlphaKind::log_over_n: return "log_over_n";
    case AlphaKind::one_over_n: return "one_over_n";
    case AlphaKind::power_law: return "power_law";
  }
  return "?";
}

std::string to_string(KRule k) {
  switch (k) {
    case KRule::A_d_log_n: return "A_d_log_n";
    case KRule::B_d_log_over_loglog: return "B_d_log_over_loglog";
    case KRule::constant: return "constant";
  }
  return "?";
}

double alpha_value(AlphaKind kind, double delta, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("alpha(n) needs n >= 2");
  const double x = static_cast<double>(n);
  switch (kind) {
    case AlphaKind::log_over_n: return std::log(x) / x;
    case AlphaKind::one_over_n: return 1.0 / x;
    case AlphaKind::power_law: return std::pow(x, -(1.0 + delta));
  }
  throw std::invalid_argument("unknown alpha kind");
}

double zone_half_width(const ExperimentParams& p) {
  return constants(p.d).m_d * alpha_value(p.alpha_kind, p.delta, p.n);
}

double B_d(int d) {
  const PaperConstants c = constants(d);
  return std::max(std::numbers::e * c.C_star_d, static_cast<double>(d - 1)) + 1.0;
}

int corollary_i_k(int d, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  return static_cast<int>(std::floor((d - 1) / delta + d - 1)) + 1;
}

double k_threshold(const ExperimentParams& p) {
  const double ln_n = std::log(static_cast<double>(p.n));
  switch (p.k_rule) {
    case KRule::A_d_log_n: return constants(p.d).A_d * ln_n;
    case KRule::B_d_log_over_loglog:
      if (!(ln_n > 1.0)) throw std::invalid_argument("B_d rule needs ln ln n > 0");
      return B_d(p.d) * ln_n / std::log(ln_n);
    case KRule::constant:
      if (p.k_constant > 0.0) return p.k_constant;
      return corollary_i_k(p.d, p.delta);
  }
  throw std::invalid_argument("unknown k rule");
}

Arrangement random_arrangement(int d, std::int64_t n, double half_width, RandomSource& rng) {
  if (!(half_width > 0.0 && half_width < kPi / 2)) throw std::invalid_argument("half_width must lie in (0, pi/2)");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  std::vector<Zone> zones;
  zones.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) zones.emplace_back(sample_uniform(d, rng), half_width);
  return Arrangement(d, std::move(zones));
}

ExperimentSummary run_theorem3_experiment(const ExperimentParams& params) {
  if (params.alpha_kind != AlphaKind::log_over_n) throw std::invalid_argument("theorem3 needs alpha = ln n / n");
  check_params(params);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentSummary s;
  s.experiment = "theorem3";
  s.params = params;
  fill_constants(s);
  NetContext ctx = prepare_net(s);
  s.mode = ctx.net ? "net_upper_bound" : "sampled_lower_bound";

  s.per_trial.resize(static_cast<std::size_t>(params.trials));
  CoverageOptions copts;
  copts.probes = params.coverage_probes;
  for_each_trial(params.trials, params.threads, [&](int i) {
    TrialOutcome& out = s.per_trial[static_cast<std::size_t>(i)];
    out.index = static_cast<std::uint64_t>(i);
    out.seed = derive_seed(params.master_seed, out.index);
    RandomSource rng(out.seed);
    const Arrangement arr = random_arrangement(params.d, params.n, s.half_width, rng);
    if (ctx.net) {
      const NetAnalysis a = analyze_with_net(arr, *ctx.net, *ctx.index, rng, copts);
      out.coverage_kind = to_string(a.coverage.kind);
      if (a.coverage.kind != CoverageKind::indeterminate) out.covered = a.coverage.covered;
      out.max_multiplicity_lower = a.lower.value;
      finish_upper(out, a.upper.value, to_string(a.upper.kind), s.k);
    } else {
      const DepthCertificate lower = sampled_lower_bound(arr, params.lower_bound_samples, rng);
      out.max_multiplicity_lower = lower.value;
      // Only an uncovered sample settles coverage here.
      std::vector<double> x(static_cast<std::size_t>(params.d));
      out.coverage_kind = to_string(CoverageKind::indeterminate);
      for (std::size_t k = 0; k < params.coverage_probes; ++k) {
        sample_uniform_into(x, rng);
        if (arr.depth(x) == 0) {
          out.covered = false;
          out.coverage_kind = to_string(CoverageKind::sampled_counterexample);
          break;
        }
      }
    }
  });
  aggregate(s);
  s.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

ExperimentSummary run_corollary_experiment(const ExperimentParams& params) {
  if (params.alpha_kind == AlphaKind::log_over_n) {
    throw std::invalid_argument("corollary experiments need alpha = 1/n or n^-(1+delta)");
  }
  check_params(params);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentSummary s;
  s.experiment = params.alpha_kind == AlphaKind::power_law ? "corollary-i" : "corollary-ii";
  s.params = params;
  fill_constants(s);
  NetContext ctx;
  if (params.d == 3) {
    s.mode = "exact_s2";
  } else {
    ctx = prepare_net(s);
    s.mode = ctx.net ? "net_upper_bound" : "sampled_lower_bound";
  }

  s.per_trial.resize(static_cast<std::size_t>(params.trials));
  for_each_trial(params.trials, params.threads, [&](int i) {
    TrialOutcome& out = s.per_trial[static_cast<std::size_t>(i)];
    out.index = static_cast<std::uint64_t>(i);
    out.seed = derive_seed(params.master_seed, out.index);
    RandomSource rng(out.seed);
    const Arrangement arr = random_arrangement(params.d, params.n, s.half_width, rng);
    out.coverage_kind = "not_assessed";
    if (params.d == 3) {
      const DepthCertificate c = exact_max_multiplicity_s2(arr);
      out.max_multiplicity_lower = c.value;
      finish_upper(out, c.value, to_string(c.kind), s.k);
    } else if (ctx.net) {
      const DepthCertificate up = net_multiplicity_upper_bound(arr, *ctx.net, *ctx.index, ctx.net->covering_radius());
      const DepthCertificate lo = sampled_lower_bound(arr, params.lower_bound_samples, rng);
      out.max_multiplicity_lower = std::min(lo.value, up.value);
      finish_upper(out, up.value, to_string(up.kind), s.k);
    } else {
      out.max_multiplicity_lower = sampled_lower_bound(arr, params.lower_bound_samples, rng).value;
    }
  });
  aggregate(s);
  s.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

double BoundValue::log10() const { return ln_value / std::numbers::ln10; }

BoundValue multiplicity_bound_expression(int d, double n, double alpha, double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(n >= 1.0)) throw std::invalid_argument("n must be >= 1");
  const PaperConstants c = constants(d);
  BoundValue b;
  b.ln_value = std::log(c.c_d) - (d - 1) * std::log(alpha) +
               k * (1.0 + std::log(c.C_star_d) + std::log(n) + std::log(alpha) - std::log(k));
  b.k_exceeds_n = k > n;
  return b;
}

double solve_A_d(int d) {
  if (d < 3) throw std::invalid_argument("A_d needs d >= 3");
  return solve_A_equation(d, constants(d).C_star_d);
}

double binomial_upper_bound(std::int64_t n, std::int64_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("binomial bound needs 1 <= k <= n");
  const double x = static_cast<double>(k);
  return x * (1.0 + std::log(static_cast<double>(n)) - std::log(x));
}

std::int64_t theorem3_bound_onset(int d, std::int64_t lo, std::int64_t hi, int per_decade) {
  if (lo < 3 || hi < lo || per_decade < 1) throw std::invalid_argument("bad onset scan range");
  const double A = constants(d).A_d;
  std::int64_t onset = 0;
  const double step = std::pow(10.0, 1.0 / per_decade);
  std::int64_t prev = 0;
  for (double x = static_cast<double>(lo);; x *= step) {
    std::int64_t n = std::min(static_cast<std::int64_t>(std::llround(x)), hi);
    if (n == prev) {
      if (n == hi) break;
      continue;
    }
    prev = n;
    const double ln_n = std::log(static_cast<double>(n));
    const double alpha = ln_n / static_cast<double>(n);
    const BoundValue b = multiplicity_bound_expression(d, static_cast<double>(n), alpha, A * ln_n);
    const bool below = !b.k_exceeds_n && b.ln_value < 0.0;
    if (!below) onset = 0;
    else if (onset == 0) onset = n;
    if (n == hi) break;
  }
  return onset;
}

}  // namespace zonelab
