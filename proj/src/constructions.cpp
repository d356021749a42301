#include "zonelab/constructions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zonelab/s2_exact.hpp"

namespace zonelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBisectTol = 1e-10;
constexpr double kScanLo = 0.05;
constexpr double kScanHi = 1.5;

bool covers(const Arrangement& arr) { return s2::exact_coverage(arr).covered; }
bool depth_at_least_4(const Arrangement& arr) { return s2::max_closed_depth(arr).depth >= 4; }

Multiplicity3Window window_of(const std::function<Arrangement(double)>& family) {
  Multiplicity3Window w;
  w.coverage = bisect_switch([&](double t) { return covers(family(t)); }, kScanLo, kScanHi, kBisectTol);
  w.onset = bisect_switch([&](double t) { return depth_at_least_4(family(t)); }, kScanLo, kScanHi, kBisectTol);
  return w;
}

}  // namespace

Arrangement fejes_toth_configuration(int d, int n, double half_width) {
  if (d != 3) throw std::invalid_argument("the Fejes Toth configuration is built for d = 3 only");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Arrangement arr(3);
  for (int k = 0; k < n; ++k) {
    const double a = k * kPi / n;
    arr.add(Zone(UnitVector::normalized({std::cos(a), std::sin(a), 0.0}), half_width));
  }
  return arr;
}

Arrangement orthogonal_zones(int d, double half_width) {
  if (d < 3) throw std::invalid_argument("orthogonal_zones needs d >= 3");
  Arrangement arr(d);
  for (int k = 0; k < d; ++k) arr.add(Zone(UnitVector::axis(d, k), half_width));
  return arr;
}

Arrangement pole_plus_equator(double half_width) {
  Arrangement arr = fejes_toth_configuration(3, 3, half_width);
  arr.add(Zone(UnitVector::axis(3, 2), half_width));
  return arr;
}

Arrangement tilted_five_zones(double half_width, double tilt) {
  Arrangement arr = fejes_toth_configuration(3, 3, half_width);
  for (double s : {1.0, -1.0}) {
    arr.add(Zone(UnitVector::normalized({s * std::sin(tilt), 0.0, std::cos(tilt)}), half_width));
  }
  return arr;
}

Bracket bisect_switch(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_switch: empty bracket");
  if (pred(lo) || !pred(hi)) throw std::invalid_argument("bisect_switch: predicate does not switch on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return {lo, hi};
}

Multiplicity3Window find_multiplicity3_width() { return window_of(pole_plus_equator); }

TiltedFiveWitness find_tilted_five_witness() {
  TiltedFiveWitness best;
  for (int k = 1; k <= 20; ++k) {
    const double tilt = 0.01 * k;
    Multiplicity3Window w;
    try {
      w = window_of([tilt](double t) { return tilted_five_zones(t, tilt); });
    } catch (const std::invalid_argument&) {
      continue;  // a threshold lies outside the scan range
    }
    if (!w.nonempty()) continue;
    if (!best.found || w.t_hi() - w.t_lo() > best.window.t_hi() - best.window.t_lo()) {
      best.found = true;
      best.tilt = tilt;
      best.window = w;
      best.half_width = 0.5 * (w.t_lo() + w.t_hi());
    }
  }
  if (best.found) {
    // The midpoint must itself pass both exact checks.
    const auto arr = tilted_five_zones(best.half_width, best.tilt);
    best.found = covers(arr) && s2::max_closed_depth(arr).depth == 3;
  }
  return best;
}

Bracket orthogonal_coverage_threshold(double tol) {
  return bisect_switch([](double t) { return covers(orthogonal_zones(3, t)); }, kScanLo, kScanHi, tol);
}

}  // namespace zonelab
