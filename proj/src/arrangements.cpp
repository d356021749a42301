#include "zonelab/arrangements.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "zonelab/errors.hpp"
#include "zonelab/s2_exact.hpp"

namespace zonelab {

namespace {

constexpr double kPi = std::numbers::pi;

UnitVector unit_from(std::span<const double> x) { return UnitVector::from_unit(std::vector<double>(x.begin(), x.end())); }

enum class LocalOutcome { covered, counterexample, unknown };

// Orthonormal basis of the tangent space at q (Gram-Schmidt on the axes).
std::vector<std::vector<double>> tangent_basis(std::span<const double> q) {
  const std::size_t d = q.size();
  std::vector<std::vector<double>> basis;
  for (std::size_t k = 0; k < d && basis.size() + 1 < d; ++k) {
    std::vector<double> v(d, 0.0);
    v[k] = 1.0;
    auto project_out = [&](std::span<const double> w) {
      double c = 0;
      for (std::size_t i = 0; i < d; ++i) c += v[i] * w[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * w[i];
    };
    project_out(q);
    for (const auto& b : basis) project_out(b);
    double n = 0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    if (n < 0.5) continue;  // axis nearly inside the current span
    for (double& c : v) c /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Subdivides the gnomonic box of the cap around q. A cell of half-side hs
// has angular radius <= hs*sqrt(d-1) about its projected center; it is
// covered when one zone shrunk by that radius contains the center.
LocalOutcome refine_cap(const Arrangement& arr, const std::vector<std::size_t>& candidates,
                        std::span<const double> q, double radius, std::size_t budget, std::vector<double>& witness) {
  const std::size_t d = q.size();
  const std::size_t free = d - 1;
  const double sqrt_free = std::sqrt(static_cast<double>(free));
  const auto basis = tangent_basis(q);
  const double T = std::tan(std::min(radius, 1.5));

  struct Cell {
    std::vector<double> y;
    double hs;
  };
  std::vector<Cell> stack{{std::vector<double>(free, 0.0), T}};
  std::vector<double> x(d);
  std::size_t used = 0;
  while (!stack.empty()) {
    if (++used > budget) return LocalOutcome::unknown;
    Cell c = std::move(stack.back());
    stack.pop_back();
    double y2 = 0;
    for (double v : c.y) y2 += v * v;
    const double ynorm = std::sqrt(y2);
    const double r = c.hs * sqrt_free;
    if (ynorm > r && std::atan(ynorm - r) > radius) continue;  // misses the cap
    double n2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = q[i];
      for (std::size_t k = 0; k < free; ++k) x[i] += c.y[k] * basis[k][i];
      n2 += x[i] * x[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : x) v *= inv;

    bool covered = false;
    for (std::size_t j : candidates) {
      const Zone& z = arr[j];
      if (z.half_width() <= r) continue;
      if (std::abs(dot(z.pole().coords(), x)) <= std::sin(z.half_width() - r) - 1e-12) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (std::atan(ynorm) <= radius && arr.depth(x) == 0) {
      witness = x;
      return LocalOutcome::counterexample;
    }
    const double h = c.hs / 2.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << free); ++mask) {
      Cell child{c.y, h};
      for (std::size_t i = 0; i < free; ++i) child.y[i] += (mask >> i & 1u) ? h : -h;
      stack.push_back(std::move(child));
    }
  }
  return LocalOutcome::covered;
}

bool probe_cap(const Arrangement& arr, std::span<const double> q, double radius, std::size_t probes,
               RandomSource& rng, std::vector<double>& witness) {
  const std::size_t d = q.size();
  const auto basis = tangent_basis(q);
  const double T = std::tan(std::min(radius, 1.5));
  std::vector<double> x(d), y(d - 1);
  for (std::size_t k = 0; k < probes; ++k) {
    double y2 = 0;
    for (double& v : y) {
      v = T * (2.0 * rng.uniform() - 1.0);
      y2 += v * v;
    }
    if (std::atan(std::sqrt(y2)) > radius) continue;
    double n2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = q[i];
      for (std::size_t j = 0; j + 1 < d; ++j) x[i] += y[j] * basis[j][i];
      n2 += x[i] * x[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : x) v *= inv;
    if (arr.depth(x) == 0) {
      witness = x;
      return true;
    }
  }
  return false;
}

CoverageCertificate resolve_flagged(const Arrangement& arr, const SaturatedNet& net,
                                    const std::vector<std::size_t>& flagged, double rho, RandomSource& rng,
                                    const CoverageOptions& options) {
  CoverageCertificate cert;
  cert.deflation = rho;
  cert.uncovered_net_points = flagged.size();
  bool all_resolved = true;
  std::vector<double> witness;
  for (std::size_t idx : flagged) {
    const auto q = net.point(idx);
    const auto candidates = zones_near(arr, q, rho);
    if (arr.dim() == 3) {
      const auto res = s2::cap_coverage(arr, candidates, {q[0], q[1], q[2]}, rho);
      cert.degenerate = cert.degenerate || res.degenerate;
      if (!res.covered) {
        cert.kind = CoverageKind::sampled_counterexample;
        cert.witness = unit_from(*res.witness);
        return cert;
      }
      continue;
    }
    const auto outcome = refine_cap(arr, candidates, q, rho, options.refine_budget, witness);
    if (outcome == LocalOutcome::counterexample) {
      cert.kind = CoverageKind::sampled_counterexample;
      cert.witness = unit_from(witness);
      return cert;
    }
    if (outcome == LocalOutcome::unknown) {
      const std::size_t per_cap = std::max<std::size_t>(1000, options.probes / flagged.size());
      if (probe_cap(arr, q, rho, per_cap, rng, witness)) {
        cert.kind = CoverageKind::sampled_counterexample;
        cert.witness = unit_from(witness);
        return cert;
      }
      all_resolved = false;
    }
  }
  if (all_resolved) {
    cert.covered = true;
    cert.kind = arr.dim() == 3 ? CoverageKind::exact_s2 : CoverageKind::net_certified;
  } else {
    cert.kind = CoverageKind::indeterminate;
  }
  return cert;
}

void check_net(const Arrangement& arr, const SaturatedNet& net) {
  if (arr.dim() != net.dim()) throw DimensionMismatch("arrangement and net dimensions differ");
  if (net.size() == 0) throw std::invalid_argument("net is empty");
}

}  // namespace

std::string to_string(DepthKind k) {
  switch (k) {
    case DepthKind::exact_s2: return "exact_s2";
    case DepthKind::net_upper_bound: return "net_upper_bound";
    case DepthKind::sampled_lower_bound: return "sampled_lower_bound";
  }
  return "?";
}

std::string to_string(CoverageKind k) {
  switch (k) {
    case CoverageKind::exact_s2: return "exact_s2";
    case CoverageKind::net_certified: return "net_certified";
    case CoverageKind::sampled_counterexample: return "sampled_counterexample";
    case CoverageKind::indeterminate: return "indeterminate";
  }
  return "?";
}

DepthCertificate exact_max_multiplicity_s2(const Arrangement& arr) {
  if (arr.dim() != 3) throw std::invalid_argument("exact_max_multiplicity_s2 needs d = 3");
  const auto res = s2::max_closed_depth(arr);
  DepthCertificate cert;
  cert.kind = DepthKind::exact_s2;
  cert.value = res.depth;
  cert.witness = unit_from(res.witness);
  cert.degenerate = res.degenerate;
  return cert;
}

CoverageCertificate exact_coverage_s2(const Arrangement& arr) {
  if (arr.dim() != 3) throw std::invalid_argument("exact_coverage_s2 needs d = 3");
  const auto res = s2::exact_coverage(arr);
  CoverageCertificate cert;
  cert.covered = res.covered;
  cert.kind = CoverageKind::exact_s2;
  if (res.witness) cert.witness = unit_from(*res.witness);
  cert.degenerate = res.degenerate;
  return cert;
}

int interior_multiplicity_probe_s2(const Arrangement& arr, int samples, RandomSource& rng) {
  return s2::interior_depth_probe(arr, samples, rng);
}

DepthCertificate net_multiplicity_upper_bound(const Arrangement& arr, const SaturatedNet& net, double inflation) {
  check_net(arr, net);
  return net_multiplicity_upper_bound(arr, net, NetIndex(net.dim(), net.flat()), inflation);
}

DepthCertificate net_multiplicity_upper_bound(const Arrangement& arr, const SaturatedNet& net, const NetIndex& index,
                                              double inflation) {
  check_net(arr, net);
  if (!(inflation >= net.covering_radius())) {
    throw std::invalid_argument("inflation must be >= the net covering radius");
  }
  const double offsets[] = {inflation};
  const auto counts = index.count_membership(arr, offsets);
  const auto it = std::max_element(counts[0].begin(), counts[0].end());
  DepthCertificate cert;
  cert.kind = DepthKind::net_upper_bound;
  cert.value = static_cast<int>(*it);
  cert.witness = net.unit_point(static_cast<std::size_t>(it - counts[0].begin()));
  cert.net_omega = net.omega();
  cert.inflation = inflation;
  return cert;
}

DepthCertificate sampled_lower_bound(const Arrangement& arr, std::size_t samples, RandomSource& rng) {
  DepthCertificate cert;
  cert.kind = DepthKind::sampled_lower_bound;
  cert.witness = UnitVector::axis(arr.dim(), arr.dim() - 1);
  cert.value = arr.depth(cert.witness);
  std::vector<double> x(static_cast<std::size_t>(arr.dim()));
  for (std::size_t k = 0; k < samples; ++k) {
    sample_uniform_into(x, rng);
    const int depth = arr.depth(x);
    if (depth > cert.value) {
      cert.value = depth;
      cert.witness = unit_from(x);
    }
  }
  return cert;
}

std::vector<std::size_t> zones_near(const Arrangement& arr, std::span<const double> center, double radius) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const double t = arr[j].half_width() + radius;
    if (t >= kPi / 2 || std::abs(dot(arr[j].pole().coords(), center)) <= std::sin(t) + 1e-12) out.push_back(j);
  }
  return out;
}

NetAnalysis analyze_with_net(const Arrangement& arr, const SaturatedNet& net, const NetIndex& index,
                             RandomSource& rng, const CoverageOptions& options) {
  check_net(arr, net);
  const double rho = net.covering_radius();
  for (const Zone& z : arr.zones()) {
    if (!(z.half_width() > rho)) throw std::invalid_argument("zone half-width must exceed the net covering radius");
  }
  const double offsets[] = {-rho, 0.0, rho};
  const auto counts = index.count_membership(arr, offsets);

  NetAnalysis out;
  const auto up = std::max_element(counts[2].begin(), counts[2].end());
  out.upper.kind = DepthKind::net_upper_bound;
  out.upper.value = static_cast<int>(*up);
  out.upper.witness = net.unit_point(static_cast<std::size_t>(up - counts[2].begin()));
  out.upper.net_omega = net.omega();
  out.upper.inflation = rho;

  const auto lo = std::max_element(counts[1].begin(), counts[1].end());
  out.lower.kind = DepthKind::sampled_lower_bound;
  out.lower.value = static_cast<int>(*lo);
  out.lower.witness = net.unit_point(static_cast<std::size_t>(lo - counts[1].begin()));
  out.lower.net_omega = net.omega();

  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < counts[0].size(); ++i) {
    if (counts[0][i] == 0) flagged.push_back(i);
  }
  if (flagged.empty()) {
    out.coverage.covered = true;
    out.coverage.kind = CoverageKind::net_certified;
    out.coverage.deflation = rho;
  } else {
    out.coverage = resolve_flagged(arr, net, flagged, rho, rng, options);
  }
  return out;
}

CoverageCertificate coverage_certificate(const Arrangement& arr, const SaturatedNet& net, RandomSource& rng,
                                         const CoverageOptions& options) {
  check_net(arr, net);
  return analyze_with_net(arr, net, NetIndex(net.dim(), net.flat()), rng, options).coverage;
}

void write_arrangement(std::ostream& os, const Arrangement& arr) {
  os << "# d=" << arr.dim() << " n=" << arr.size() << '\n';
  char buf[64];
  for (const Zone& z : arr.zones()) {
    for (double c : z.pole().coords()) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      os << buf << ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", z.half_width());
    os << buf << '\n';
  }
}

Arrangement read_arrangement(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("arrangement: missing header");
  int d = 0;
  long long n = -1;
  if (std::sscanf(line.c_str(), "# d=%d n=%lld", &d, &n) != 2 || d < 2 || n < 0) {
    throw ParseError("arrangement: bad header: " + line);
  }
  Arrangement arr(d);
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<double> v;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("arrangement: bad number '" + tok + "' on line " + std::to_string(row));
      }
    }
    if (v.size() != static_cast<std::size_t>(d) + 1) {
      throw ParseError("arrangement: expected " + std::to_string(d + 1) + " values on line " + std::to_string(row));
    }
    const double t = v.back();
    v.pop_back();
    try {
      arr.add(Zone(UnitVector::from_unit(std::move(v)), t));
    } catch (const std::invalid_argument& e) {
      throw ParseError("arrangement: line " + std::to_string(row) + ": " + e.what());
    }
  }
  if (static_cast<long long>(arr.size()) != n) {
    throw ParseError("arrangement: header says n=" + std::to_string(n) + " but found " + std::to_string(arr.size()));
  }
  return arr;
}

}  // namespace zonelab
