#include "zonelab/report.hpp"

#include <ostream>

namespace zonelab {

using nlohmann::json;

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::string optional_csv(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "1" : "0";
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

json report_header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"version", ZONELAB_VERSION}, {"command", command}};
}

json to_json(const UnitVector& u) { return json(std::vector<double>(u.coords().begin(), u.coords().end())); }

json to_json(const DepthCertificate& c) {
  json j{{"kind", to_string(c.kind)}, {"value", c.value}, {"witness", to_json(c.witness)},
         {"degenerate", c.degenerate}};
  if (c.kind == DepthKind::net_upper_bound) {
    j["net_omega"] = c.net_omega;
    j["inflation"] = c.inflation;
  }
  return j;
}

json to_json(const CoverageCertificate& c) {
  json j{{"covered", c.covered},
         {"kind", to_string(c.kind)},
         {"witness", c.witness ? to_json(*c.witness) : json(nullptr)},
         {"degenerate", c.degenerate}};
  if (c.kind == CoverageKind::net_certified || c.uncovered_net_points > 0) {
    j["deflation"] = c.deflation;
    j["uncovered_net_points"] = c.uncovered_net_points;
  }
  return j;
}

json to_json(const ExperimentParams& p) {
  return {{"d", p.d},
          {"n", p.n},
          {"alpha_kind", to_string(p.alpha_kind)},
          {"delta", p.delta},
          {"k_rule", to_string(p.k_rule)},
          {"k_constant", p.k_constant},
          {"trials", p.trials},
          {"master_seed", p.master_seed},
          {"net_omega", p.net_omega},
          {"net_cover_slack", p.net_cover_slack},
          {"net_rejections", p.net_rejections},
          {"net_point_limit", p.net_point_limit},
          {"coverage_probes", p.coverage_probes},
          {"lower_bound_samples", p.lower_bound_samples}};
}

json to_json(const TrialOutcome& t) {
  return {{"trial", t.index},
          {"seed", t.seed},
          {"covered", optional_json(t.covered)},
          {"coverage_kind", t.coverage_kind},
          {"max_multiplicity_upper", optional_json(t.max_multiplicity_upper)},
          {"max_multiplicity_lower", t.max_multiplicity_lower},
          {"upper_kind", t.upper_kind},
          {"multiplicity_ok", optional_json(t.multiplicity_ok)}};
}

json to_json(const ExperimentSummary& s) {
  json trials = json::array();
  for (const auto& t : s.per_trial) trials.push_back(to_json(t));
  json hist = json::object();
  for (const auto& [value, count] : s.multiplicity_histogram) hist[std::to_string(value)] = count;
  json net = nullptr;
  if (s.net_size > 0) {
    net = {{"omega", s.net_omega},
           {"size", s.net_size},
           {"covering_radius", s.net_covering_radius},
           {"certified", s.net_certified}};
  }
  return {{"experiment", s.experiment},
          {"params", to_json(s.params)},
          {"mode", s.mode},
          {"alpha", s.alpha},
          {"half_width", s.half_width},
          {"k", s.k},
          {"A_d", s.A_d},
          {"B_d", s.B_d},
          {"C_star_d", s.C_star_d},
          {"c_d", s.c_d},
          {"log10_bound", s.log10_bound},
          {"k_exceeds_n", s.k_exceeds_n},
          {"net", net},
          {"covered_fraction", s.covered_fraction},
          {"multiplicity_ok_fraction", s.multiplicity_ok_fraction},
          {"multiplicity_histogram", hist},
          {"notes", s.notes},
          {"per_trial", trials},
          {"wall_time_seconds", s.wall_time_seconds}};
}

json net_summary_json(const SaturatedNet& net) {
  return {{"d", net.dim()},
          {"omega", net.omega()},
          {"size", net.size()},
          {"seed", net.rng_seed()},
          {"saturation_rejections", net.saturation_rejections()},
          {"covering_radius", net.covering_radius()},
          {"certified", net.covering_certified()}};
}

json to_json(const RationalPolynomial& p) { return p.coefficient_strings(); }

json to_json(const CombinatoricsRow& row) {
  return {{"d", row.d},
          {"p_coefficients", to_json(row.p)},
          {"root_at_d", row.largest.root_at_d},
          {"roots_above_d", row.largest.roots_above_d},
          {"cauchy_bound", row.largest.cauchy_bound.get_str()},
          {"largest_root_is_d", row.largest.pass},
          {"even_conjecture", row.even_conjecture ? json(*row.even_conjecture) : json("n/a")}};
}

json to_json(const FactorizationCheck& c) {
  return {{"d", c.d}, {"matches", c.matches}, {"expected", c.expected}, {"computed", c.computed}};
}

json to_json(const QuinticCofactorReport& r) {
  json iv = json::array();
  for (const auto& i : r.intervals) iv.push_back({{"lo", i.lo.get_str()}, {"hi", i.hi.get_str()}});
  return {{"real_roots", r.real_roots}, {"isolating_intervals", iv}, {"single_root_below_5", r.single_root_below_5}};
}

void write_trials_csv(std::ostream& os, const ExperimentSummary& s) {
  os << "trial,seed,covered,coverage_kind,upper,lower,upper_kind,ok\n";
  for (const auto& t : s.per_trial) {
    os << t.index << ',' << t.seed << ',' << optional_csv(t.covered) << ',' << t.coverage_kind << ','
       << optional_csv(t.max_multiplicity_upper) << ',' << t.max_multiplicity_lower << ',' << t.upper_kind << ','
       << optional_csv(t.multiplicity_ok) << '\n';
  }
}

void write_combinatorics_csv(std::ostream& os, const std::vector<CombinatoricsRow>& rows) {
  os << "d,degree,root_at_d,roots_above_d,largest_root_is_d,even_conjecture\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.p.degree() << ',' << (r.largest.root_at_d ? 1 : 0) << ',' << r.largest.roots_above_d << ','
       << (r.largest.pass ? 1 : 0) << ',' << optional_csv(r.even_conjecture) << '\n';
  }
}

}  // namespace zonelab
