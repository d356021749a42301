#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "zonelab/random.hpp"
#include "zonelab/sphere.hpp"

// Exact engines on S^2. "Exact" means combinatorially complete: every face
// of the arrangement of boundary circles is examined, with a fixed tie
// tolerance on boundary comparisons.
namespace zonelab::s2 {

using Vec3 = std::array<double, 3>;

inline constexpr double kTieTolerance = 1e-10;
/// Angular offset of the probe circles just outside each zone.
inline constexpr double kOutwardOffset = 1e-10;

/// Small circle {x in S^2 : <normal, x> = height}, |height| < 1.
struct Circle {
  Vec3 normal;
  double height;
};

struct CircleIntersection {
  int count = 0;  // 0, 1 (tangent) or 2
  std::array<Vec3, 2> points{};
  bool degenerate = false;  // tangent or coincident within tolerance
};

/// Plane-plane line intersected with the sphere; discriminant below 1e-20
/// counts as tangent.
CircleIntersection intersect(const Circle& a, const Circle& b);

/// The two boundary circles <u,x> = +-sin(t) of every zone, in zone order.
std::vector<Circle> boundary_circles(const Arrangement& arr);

struct DepthResult {
  int depth = 0;
  Vec3 witness{0.0, 0.0, 1.0};
  bool degenerate = false;
};

/// Maximum closed depth over S^2. The maximum is attained on a boundary
/// circle (or anywhere when there are none), so sweeping each circle
/// against the arcs cut out by the other zones is complete.
DepthResult max_closed_depth(const Arrangement& arr, double tie_tol = kTieTolerance);

struct CoverageResult {
  bool covered = false;
  std::optional<Vec3> witness;  // verified to lie outside every closed zone
  bool degenerate = false;
};

/// Whether the closed zones cover S^2. Sweeps circles offset outward by
/// kOutwardOffset from every boundary; any arc there outside all other
/// zones yields a witness. Uncovered regions thinner than the offset are
/// not resolved.
CoverageResult exact_coverage(const Arrangement& arr);

/// Coverage of the closed cap {x : angle(x, center) <= radius} using only
/// the zones listed in `candidates` (callers pass every zone that can meet
/// the cap).
CoverageResult cap_coverage(const Arrangement& arr, std::span<const std::size_t> candidates, const Vec3& center,
                            double radius);

/// Lower bound on max open depth: circle intersection points pushed 1e-7
/// into each of the four adjacent faces, points just off each circle, and
/// `samples` uniform points.
int interior_depth_probe(const Arrangement& arr, int samples, RandomSource& rng, Vec3* witness = nullptr);

}  // namespace zonelab::s2
