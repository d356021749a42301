#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zonelab/net_index.hpp"
#include "zonelab/nets.hpp"
#include "zonelab/random.hpp"
#include "zonelab/sphere.hpp"

namespace zonelab {

enum class DepthKind { exact_s2, net_upper_bound, sampled_lower_bound };
enum class CoverageKind { exact_s2, net_certified, sampled_counterexample, indeterminate };

std::string to_string(DepthKind k);
std::string to_string(CoverageKind k);

/// Certified statement about the maximum closed multiplicity.
///  exact_s2: value is the maximum (d = 3 only).
///  net_upper_bound: maximum <= value, given net covering radius <= inflation.
///  sampled_lower_bound: maximum >= value; witness lies in `value` zones.
struct DepthCertificate {
  DepthKind kind = DepthKind::sampled_lower_bound;
  int value = 0;
  UnitVector witness = UnitVector::axis(3, 2);
  double net_omega = 0.0;
  double inflation = 0.0;
  bool degenerate = false;
};

/// `indeterminate` means neither a proof of coverage nor a counterexample
/// was found; `covered` is then false.
struct CoverageCertificate {
  bool covered = false;
  CoverageKind kind = CoverageKind::indeterminate;
  double deflation = 0.0;
  std::optional<UnitVector> witness;
  std::size_t uncovered_net_points = 0;
  bool degenerate = false;
};

DepthCertificate exact_max_multiplicity_s2(const Arrangement& arr);

/// Exact coverage decision on S^2.
CoverageCertificate exact_coverage_s2(const Arrangement& arr);

/// Lower bound on the maximum open (interior) depth on S^2.
int interior_multiplicity_probe_s2(const Arrangement& arr, int samples, RandomSource& rng);

/// Max over net points of the number of zones inflated by `inflation`.
/// Requires inflation >= net.covering_radius().
DepthCertificate net_multiplicity_upper_bound(const Arrangement& arr, const SaturatedNet& net, double inflation);
DepthCertificate net_multiplicity_upper_bound(const Arrangement& arr, const SaturatedNet& net, const NetIndex& index,
                                              double inflation);

/// Max closed depth over `samples` uniform points.
DepthCertificate sampled_lower_bound(const Arrangement& arr, std::size_t samples, RandomSource& rng);

struct CoverageOptions {
  std::size_t probes = 100000;
  /// Cell budget for the local refinement of each flagged cap (d >= 4).
  std::size_t refine_budget = 200000;
};

/// Net deflation test, then local resolution of every flagged net point:
/// the exact cap engine on S^2, refinement plus probes elsewhere.
CoverageCertificate coverage_certificate(const Arrangement& arr, const SaturatedNet& net, RandomSource& rng,
                                         const CoverageOptions& options = {});

/// Both net certificates from one pass over the index.
struct NetAnalysis {
  DepthCertificate upper;
  DepthCertificate lower;  // best exact depth found at a net point
  CoverageCertificate coverage;
};
NetAnalysis analyze_with_net(const Arrangement& arr, const SaturatedNet& net, const NetIndex& index,
                             RandomSource& rng, const CoverageOptions& options = {});

/// Zones that can meet the closed cap of `radius` about `center`.
std::vector<std::size_t> zones_near(const Arrangement& arr, std::span<const double> center, double radius);

/// "# d=<d> n=<n>" then one zone per line: pole coordinates and
/// half-width, 17 significant digits, space separated.
void write_arrangement(std::ostream& os, const Arrangement& arr);
Arrangement read_arrangement(std::istream& is);

}  // namespace zonelab
