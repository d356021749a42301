#pragma once

#include <functional>
#include <vector>

#include "zonelab/sphere.hpp"

namespace zonelab {

/// n zones on S^2 whose central great circles all pass through (0,0,+-1),
/// poles at (cos(k pi/n), sin(k pi/n), 0).
Arrangement fejes_toth_configuration(int d, int n, double half_width);

/// d zones with poles e_1..e_d.
Arrangement orthogonal_zones(int d, double half_width);

/// Three meridian zones with poles (cos(k pi/3), sin(k pi/3), 0) and the
/// equatorial zone with pole (0,0,1).
Arrangement pole_plus_equator(double half_width);

/// pole_plus_equator with the equatorial zone doubled and the two copies
/// rotated by +tilt and -tilt about the y-axis.
Arrangement tilted_five_zones(double half_width, double tilt);

/// Shrinks [lo, hi] around the switch point of a monotone predicate with
/// pred(lo) false and pred(hi) true, until hi - lo <= tol.
struct Bracket {
  double lo;
  double hi;
};
Bracket bisect_switch(const std::function<bool(double)>& pred, double lo, double hi, double tol);

/// Half-widths where a family covers S^2 with exact multiplicity 3.
/// coverage: lo not covered, hi covered; onset: lo depth <= 3, hi depth >= 4.
struct Multiplicity3Window {
  Bracket coverage;
  Bracket onset;
  double t_lo() const { return coverage.hi; }
  double t_hi() const { return onset.lo; }
  bool nonempty() const { return t_lo() < t_hi(); }
};

/// Both thresholds of pole_plus_equator, bisected with the exact engines
/// to width 1e-10.
Multiplicity3Window find_multiplicity3_width();

struct TiltedFiveWitness {
  bool found = false;
  double tilt = 0.0;
  double half_width = 0.0;  // midpoint of the window at this tilt
  Multiplicity3Window window{};
};

/// Scans tilts 0.01, 0.02, ..., 0.20 and keeps the widest window.
TiltedFiveWitness find_tilted_five_witness();

/// Coverage threshold of orthogonal_zones(3, t) bisected with the exact
/// coverage engine.
Bracket orthogonal_coverage_threshold(double tol = 1e-10);

}  // namespace zonelab
