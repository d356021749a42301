#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "zonelab/arrangements.hpp"
#include "zonelab/exactcomb.hpp"
#include "zonelab/montecarlo.hpp"
#include "zonelab/nets.hpp"

namespace zonelab {

inline constexpr int kSchemaVersion = 1;

/// {"schema_version", "version", "command"}; every artifact starts from it.
nlohmann::json report_header(const std::string& command);

nlohmann::json to_json(const UnitVector& u);
nlohmann::json to_json(const DepthCertificate& c);
nlohmann::json to_json(const CoverageCertificate& c);
nlohmann::json to_json(const ExperimentParams& p);
nlohmann::json to_json(const TrialOutcome& t);
nlohmann::json to_json(const ExperimentSummary& s);
nlohmann::json net_summary_json(const SaturatedNet& net);

/// Rational coefficients are exact strings.
nlohmann::json to_json(const RationalPolynomial& p);
nlohmann::json to_json(const CombinatoricsRow& row);
nlohmann::json to_json(const FactorizationCheck& c);
nlohmann::json to_json(const QuinticCofactorReport& r);

/// Columns: trial,seed,covered,coverage_kind,upper,lower,upper_kind,ok.
/// Unknown values are left empty.
void write_trials_csv(std::ostream& os, const ExperimentSummary& s);
/// Columns: d,degree,root_at_d,roots_above_d,largest_root_is_d,even_conjecture.
void write_combinatorics_csv(std::ostream& os, const std::vector<CombinatoricsRow>& rows);

}  // namespace zonelab
