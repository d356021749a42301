#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "zonelab/arrangements.hpp"
#include "zonelab/constructions.hpp"
#include "zonelab/errors.hpp"
#include "zonelab/exactcomb.hpp"
#include "zonelab/montecarlo.hpp"
#include "zonelab/nets.hpp"
#include "zonelab/report.hpp"

namespace zonelab::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output;
  std::uint64_t seed = 1;
  int threads = 0;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("ZONELAB_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError(std::string("ZONELAB_SEED is not an integer: ") + env);
  return v;
}

int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// Writes to --output when given, otherwise to `out`.
template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open output file: " + path);
  write(f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

void emit_json(const std::string& path, std::ostream& out, const json& j) {
  emit(path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Arrangement load_arrangement(const std::string& path, std::istream* stdin_stream) {
  if (path == "-") return read_arrangement(*stdin_stream);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open arrangement file: " + path);
  return read_arrangement(f);
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string kind;
  std::optional<std::int64_t> n;
  std::optional<int> d;
  std::optional<double> half_width;
  std::optional<double> tilt;
  std::string alpha;
  double delta = 0.0;
};

void add_construct(CLI::App& app, ConstructArgs& a, Common& c) {
  auto* sub = app.add_subcommand("construct", "Write an arrangement file");
  sub->add_option("kind", a.kind, "fejes-toth | orthogonal | pole-equator | tilted-five | random")
      ->required()
      ->check(CLI::IsMember({"fejes-toth", "orthogonal", "pole-equator", "tilted-five", "random"}));
  sub->add_option("--n", a.n, "Number of zones");
  sub->add_option("--d", a.d, "Ambient dimension (sphere S^{d-1})");
  sub->add_option("--half-width", a.half_width, "Zone half-width in radians");
  sub->add_option("--tilt", a.tilt, "Tilt of the doubled equatorial zone (tilted-five)");
  sub->add_option("--alpha", a.alpha, "random: half-width m_d*alpha(n), alpha in log-over-n | one-over-n | power-law")
      ->check(CLI::IsMember({"log-over-n", "one-over-n", "power-law"}));
  sub->add_option("--delta", a.delta, "power-law exponent: alpha(n) = n^-(1+delta)");
  sub->add_option("--seed", c.seed, "Random seed (default $ZONELAB_SEED or 1)");
  sub->add_option("-o,--output", c.output, "Output path (default stdout)");
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& kind) {
  if (!v) throw UsageError(kind + " needs " + flag);
  return *v;
}

int cmd_construct(const ConstructArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Arrangement arr(3);
  if (a.kind == "fejes-toth") {
    arr = fejes_toth_configuration(a.d.value_or(3), static_cast<int>(need(a.n, "--n", a.kind)),
                                   need(a.half_width, "--half-width", a.kind));
  } else if (a.kind == "orthogonal") {
    arr = orthogonal_zones(a.d.value_or(3), need(a.half_width, "--half-width", a.kind));
  } else if (a.kind == "pole-equator") {
    arr = pole_plus_equator(need(a.half_width, "--half-width", a.kind));
  } else if (a.kind == "tilted-five") {
    arr = tilted_five_zones(need(a.half_width, "--half-width", a.kind), need(a.tilt, "--tilt", a.kind));
  } else {
    const int d = need(a.d, "--d", a.kind);
    const std::int64_t n = need(a.n, "--n", a.kind);
    double t = 0.0;
    if (a.half_width && !a.alpha.empty()) throw UsageError("random takes --half-width or --alpha, not both");
    if (a.half_width) {
      t = *a.half_width;
    } else if (!a.alpha.empty()) {
      const AlphaKind kind = a.alpha == "log-over-n"   ? AlphaKind::log_over_n
                             : a.alpha == "one-over-n" ? AlphaKind::one_over_n
                                                       : AlphaKind::power_law;
      if (kind == AlphaKind::power_law && !(a.delta > 0.0)) throw UsageError("power-law needs --delta > 0");
      t = constants(d).m_d * alpha_value(kind, a.delta, n);
    } else {
      throw UsageError("random needs --half-width or --alpha");
    }
    RandomSource rng(c.seed);
    arr = random_arrangement(d, n, t, rng);
  }
  emit(c.output, out, [&](std::ostream& os) { write_arrangement(os, arr); });
  char buf[160];
  std::snprintf(buf, sizeof buf, "construct %s: d=%d n=%zu half_width=%.17g", a.kind.c_str(), arr.dim(), arr.size(),
                arr.empty() ? 0.0 : arr[0].half_width());
  err << buf << (c.output.empty() ? "" : " -> " + c.output) << '\n';
  return kOk;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string path;
  std::optional<double> net_omega;
  bool exact_s2 = false;
  double net_slack = 1.0;
  std::uint64_t net_rejections = 1000;
  std::size_t samples = 100000;
  std::size_t probes = 100000;
};

void add_verify(CLI::App& app, VerifyArgs& a, Common& c) {
  auto* sub = app.add_subcommand("verify", "Certify multiplicity and coverage of an arrangement file");
  sub->add_option("arrangement", a.path, "Arrangement file ('-' for stdin)")->required();
  sub->add_option("--net-omega", a.net_omega, "Build a saturated net of this spacing and certify with it");
  sub->add_flag("--exact-s2", a.exact_s2, "Exact engines (d = 3); default for d = 3 without --net-omega");
  sub->add_option("--net-slack", a.net_slack, "Net covering-radius slack factor (>= 1)");
  sub->add_option("--net-rejections", a.net_rejections, "Dart-throwing rejection budget");
  sub->add_option("--samples", a.samples, "Uniform samples for the sampled lower bound");
  sub->add_option("--probes", a.probes, "Probe budget for coverage");
  sub->add_option("--seed", c.seed, "Random seed (default $ZONELAB_SEED or 1)");
  sub->add_option("-o,--output", c.output, "Output path (default stdout)");
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Arrangement arr = load_arrangement(a.path, &std::cin);
  const int d = arr.dim();
  if (a.exact_s2 && d != 3) throw UsageError("--exact-s2 needs d = 3");
  if (a.net_omega && !(*a.net_omega > 0.0)) throw UsageError("--net-omega must be positive");
  if (!(a.net_slack >= 1.0)) throw UsageError("--net-slack must be >= 1");

  json j = report_header("verify");
  j["seed"] = c.seed;
  j["input"] = a.path;
  j["arrangement"] = {{"d", d}, {"n", arr.size()}};
  RandomSource rng(c.seed);

  json depth = json::array();
  std::optional<CoverageCertificate> coverage;
  std::optional<int> multiplicity;  // exact value or best upper bound

  if (d == 3 && (a.exact_s2 || !a.net_omega)) {
    const DepthCertificate dc = exact_max_multiplicity_s2(arr);
    depth.push_back(to_json(dc));
    multiplicity = dc.value;
    coverage = exact_coverage_s2(arr);
    j["interior_multiplicity_lower"] = interior_multiplicity_probe_s2(arr, static_cast<int>(a.samples), rng);
  }
  if (a.net_omega) {
    if (d < 3) throw UsageError("nets need d >= 3");
    NetOptions opts;
    opts.cover_slack = a.net_slack;
    RandomSource net_rng(derive_seed(c.seed, std::numeric_limits<std::uint64_t>::max()));
    const SaturatedNet net = build_saturated_net(d, *a.net_omega, net_rng, a.net_rejections, opts);
    j["net"] = net_summary_json(net);
    for (const Zone& z : arr.zones()) {
      if (!(z.half_width() > net.covering_radius())) {
        throw UsageError("--net-omega too large: net covering radius " + std::to_string(net.covering_radius()) +
                         " must be below every half-width");
      }
    }
    CoverageOptions copts;
    copts.probes = a.probes;
    const NetAnalysis na = analyze_with_net(arr, net, NetIndex(d, net.flat()), rng, copts);
    depth.push_back(to_json(na.upper));
    depth.push_back(to_json(na.lower));
    if (!multiplicity) multiplicity = na.upper.value;
    if (!coverage) coverage = na.coverage;
    else j["net_coverage"] = to_json(na.coverage);
  }
  if (!multiplicity) {
    const DepthCertificate lo = sampled_lower_bound(arr, a.samples, rng);
    depth.push_back(to_json(lo));
    CoverageCertificate cc;
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < a.probes; ++k) {
      sample_uniform_into(x, rng);
      if (arr.depth(x) == 0) {
        cc.kind = CoverageKind::sampled_counterexample;
        cc.witness = UnitVector::from_unit(x);
        break;
      }
    }
    coverage = cc;
  }

  j["depth"] = depth;
  j["coverage"] = to_json(*coverage);
  j["covered"] = coverage->covered;
  j["multiplicity"] = multiplicity ? json(*multiplicity) : json(nullptr);
  emit_json(c.output, out, j);
  err << "verify: covered=" << (coverage->covered ? "true" : "false") << " (" << to_string(coverage->kind) << ")";
  if (multiplicity) err << " multiplicity=" << *multiplicity;
  if (coverage->witness) {
    err << " witness=";
    const auto w = coverage->witness->coords();
    for (std::size_t i = 0; i < w.size(); ++i) err << (i ? "," : "") << w[i];
  }
  err << '\n';
  return kOk;
}

// --------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string which;
  int d = 3;
  std::int64_t n = 1000;
  int trials = 10;
  double delta = 0.0;
  std::optional<double> k;
  double net_omega = 0.0;
  double net_slack = 1.25;
  std::uint64_t net_rejections = 100;
  std::size_t probes = 100000;
  std::size_t samples = 100000;
  std::string csv;
};

void add_experiment(CLI::App& app, ExperimentArgs& a, Common& c) {
  auto* sub = app.add_subcommand("experiment", "Run seeded random-arrangement trials");
  sub->add_option("which", a.which, "theorem3 | corollary-i | corollary-ii")
      ->required()
      ->check(CLI::IsMember({"theorem3", "corollary-i", "corollary-ii"}));
  sub->add_option("--d", a.d, "Ambient dimension")->check(CLI::Range(3, 64));
  sub->add_option("--n", a.n, "Zones per trial")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  sub->add_option("--trials", a.trials, "Number of trials")->check(CLI::Range(1, 1 << 30));
  sub->add_option("--delta", a.delta, "corollary-i: alpha(n) = n^-(1+delta)");
  sub->add_option("--k", a.k, "corollary-i: multiplicity threshold (default: smallest the bound allows)");
  sub->add_option("--net-omega", a.net_omega, "Net spacing (default half-width / 2)");
  sub->add_option("--net-slack", a.net_slack, "Net covering-radius slack factor (>= 1)");
  sub->add_option("--net-rejections", a.net_rejections, "Dart-throwing rejection budget");
  sub->add_option("--probes", a.probes, "Coverage probe budget per trial");
  sub->add_option("--samples", a.samples, "Uniform samples for sampled lower bounds");
  sub->add_option("--csv", a.csv, "Also write per-trial rows as CSV to this path");
  sub->add_option("--seed", c.seed, "Master seed (default $ZONELAB_SEED or 1)");
  sub->add_option("--threads", c.threads, "Worker threads (default: available parallelism)");
  sub->add_option("-o,--output", c.output, "Summary JSON path (default stdout)");
}

int cmd_experiment(const ExperimentArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  ExperimentParams p;
  p.d = a.d;
  p.n = a.n;
  p.trials = a.trials;
  p.master_seed = c.seed;
  p.net_omega = a.net_omega;
  p.net_cover_slack = a.net_slack;
  p.net_rejections = a.net_rejections;
  p.coverage_probes = a.probes;
  p.lower_bound_samples = a.samples;
  p.threads = c.threads > 0 ? c.threads : default_threads();
  if (!(a.net_slack >= 1.0)) throw UsageError("--net-slack must be >= 1");

  ExperimentSummary s;
  if (a.which == "theorem3") {
    p.alpha_kind = AlphaKind::log_over_n;
    p.k_rule = KRule::A_d_log_n;
    s = run_theorem3_experiment(p);
  } else if (a.which == "corollary-i") {
    if (!(a.delta > 0.0)) throw UsageError("corollary-i needs --delta > 0");
    p.alpha_kind = AlphaKind::power_law;
    p.delta = a.delta;
    p.k_rule = KRule::constant;
    p.k_constant = a.k.value_or(0.0);
    s = run_corollary_experiment(p);
  } else {
    p.alpha_kind = AlphaKind::one_over_n;
    p.k_rule = KRule::B_d_log_over_loglog;
    s = run_corollary_experiment(p);
  }

  json j = report_header("experiment " + a.which);
  j["seed"] = c.seed;
  j["summary"] = to_json(s);
  emit_json(c.output, out, j);
  if (!a.csv.empty()) emit(a.csv, out, [&](std::ostream& os) { write_trials_csv(os, s); });
  err << "experiment " << a.which << ": trials=" << s.per_trial.size() << " covered_fraction=" << s.covered_fraction
      << " multiplicity_ok_fraction=" << s.multiplicity_ok_fraction << " mode=" << s.mode << '\n';
  return kOk;
}

// ------------------------------------------------------------ combinatorics

struct CombinatoricsArgs {
  int d_max = 10;
  bool even = false;
  std::string csv;
};

void add_combinatorics(CLI::App& app, CombinatoricsArgs& a, Common& c) {
  auto* sub = app.add_subcommand("combinatorics", "Exact face-count polynomials and root checks");
  sub->add_option("--d-max", a.d_max, "Largest dimension (>= 3)");
  sub->add_flag("--even-conjecture", a.even, "Check the product formula for even d >= 6");
  sub->add_option("--csv", a.csv, "Also write the table as CSV to this path");
  sub->add_option("-o,--output", c.output, "Report JSON path (default stdout)");
}

int cmd_combinatorics(const CombinatoricsArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (a.d_max < 3) throw UsageError("--d-max must be >= 3");
  const auto rows = combinatorics_table(a.d_max, a.even);
  json table = json::array();
  bool all_pass = true;
  for (const auto& r : rows) {
    table.push_back(to_json(r));
    all_pass = all_pass && r.largest.pass;
  }
  json j = report_header("combinatorics");
  j["d_max"] = a.d_max;
  j["even_conjecture_checked"] = a.even;
  j["table"] = table;
  if (a.d_max >= 4) {
    json checks = json::array();
    for (const auto& f : verify_paper_factorizations()) {
      if (f.d <= a.d_max) checks.push_back(to_json(f));
    }
    j["factorizations"] = checks;
  }
  if (a.d_max >= 5) j["quintic_cofactor"] = to_json(analyze_quintic_cofactor());
  emit_json(c.output, out, j);
  if (!a.csv.empty()) emit(a.csv, out, [&](std::ostream& os) { write_combinatorics_csv(os, rows); });
  err << "combinatorics: d=3.." << a.d_max << " largest_root_is_d " << (all_pass ? "all true" : "FAILURES") << '\n';
  return kOk;
}

// ---------------------------------------------------------------------- net

struct NetArgs {
  int d = 3;
  double omega = 0.1;
  double slack = 1.0;
  std::uint64_t rejections = 1000;
};

void add_net(CLI::App& app, NetArgs& a, Common& c) {
  auto* sub = app.add_subcommand("net", "Build a saturated net and write it as CSV");
  sub->add_option("--d", a.d, "Ambient dimension")->check(CLI::Range(3, 16));
  sub->add_option("--omega", a.omega, "Packing distance")->required();
  sub->add_option("--net-slack", a.slack, "Covering-radius slack factor (>= 1)");
  sub->add_option("--net-rejections", a.rejections, "Dart-throwing rejection budget");
  sub->add_option("--seed", c.seed, "Random seed (default $ZONELAB_SEED or 1)");
  sub->add_option("-o,--output", c.output, "Output path (default stdout)");
}

int cmd_net(const NetArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (!(a.omega > 0.0 && a.omega < 1.0)) throw UsageError("--omega must lie in (0, 1)");
  if (!(a.slack >= 1.0)) throw UsageError("--net-slack must be >= 1");
  RandomSource rng(c.seed);
  NetOptions opts;
  opts.cover_slack = a.slack;
  const SaturatedNet net = build_saturated_net(a.d, a.omega, rng, a.rejections, opts);
  emit(c.output, out, [&](std::ostream& os) { write_net_csv(os, net); });
  const Lemma1Window w = lemma1_window(a.d, a.omega, 1.0);
  err << "net: d=" << a.d << " omega=" << a.omega << " size=" << net.size() << " covering_radius<="
      << net.covering_radius() << " window=(" << w.lower << ", " << w.upper << ")\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random and extremal zone arrangements on spheres", "zonelab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ZONELAB_VERSION));

  Common common;
  ConstructArgs construct;
  VerifyArgs verify;
  ExperimentArgs experiment;
  CombinatoricsArgs combinatorics;
  NetArgs net;
  try {
    common.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  add_construct(app, construct, common);
  add_verify(app, verify, common);
  add_experiment(app, experiment, common);
  add_combinatorics(app, combinatorics, common);
  add_net(app, net, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "construct") return cmd_construct(construct, common, out, err);
    if (name == "verify") return cmd_verify(verify, common, out, err);
    if (name == "experiment") return cmd_experiment(experiment, common, out, err);
    if (name == "combinatorics") return cmd_combinatorics(combinatorics, common, out, err);
    if (name == "net") return cmd_net(net, common, out, err);
    err << "error: unknown subcommand " << name << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zonelab::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputParse;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputParse;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace zonelab::cli
