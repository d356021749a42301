#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zonelab/random.hpp"

namespace zonelab {

/// Thrown when inputs of two objects live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of S^{d-1}, stored as Euclidean coordinates in R^d.
class UnitVector {
 public:
  /// Normalizes `coords`. Throws for d < 2 or a (numerically) zero vector.
  static UnitVector normalized(std::vector<double> coords);
  /// Keeps `coords` bit-for-bit when already unit to 1e-12 (used when
  /// reading files); normalizes otherwise.
  static UnitVector from_unit(std::vector<double> coords);
  /// +/- e_k in R^d.
  static UnitVector axis(int d, int k, double sign = 1.0);

  int dim() const { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  UnitVector operator-() const;
  bool operator==(const UnitVector&) const = default;

 private:
  explicit UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);
double dot(const UnitVector& a, const UnitVector& b);

/// Arclength of the shorter great-circle arc, in [0, pi].
double spherical_distance(const UnitVector& p, const UnitVector& q);

enum class Boundary { closed, open };

/// Points within `half_width` (radians) of the great sphere orthogonal to
/// `pole`: { x : |<pole, x>| <= sin(half_width) }.
class Zone {
 public:
  Zone(UnitVector pole, double half_width);

  const UnitVector& pole() const { return pole_; }
  double half_width() const { return half_width_; }
  double width() const { return 2.0 * half_width_; }
  int dim() const { return pole_.dim(); }
  /// sin(half_width), the slab half-thickness.
  double slab() const { return slab_; }

  bool contains(std::span<const double> x, Boundary mode = Boundary::closed) const;
  /// Same zone with half-width changed (used for inflation/deflation).
  Zone with_half_width(double half_width) const { return Zone(pole_, half_width); }

  bool operator==(const Zone&) const = default;

 private:
  UnitVector pole_;
  double half_width_;
  double slab_;
};

bool zone_contains(const Zone& z, const UnitVector& p, Boundary mode = Boundary::closed);

/// Angular distance from p to the central great sphere of z.
double distance_to_central_sphere(const Zone& z, const UnitVector& p);

/// Ordered list of zones on S^{dim-1}.
class Arrangement {
 public:
  explicit Arrangement(int dim);
  Arrangement(int dim, std::vector<Zone> zones);

  int dim() const { return dim_; }
  std::size_t size() const { return zones_.size(); }
  bool empty() const { return zones_.empty(); }
  const std::vector<Zone>& zones() const { return zones_; }
  const Zone& operator[](std::size_t i) const { return zones_[i]; }

  void add(Zone z);

  /// Number of zones containing x.
  int depth(std::span<const double> x, Boundary mode = Boundary::closed) const;
  int depth(const UnitVector& x, Boundary mode = Boundary::closed) const {
    return depth(x.coords(), mode);
  }

  bool operator==(const Arrangement&) const = default;

 private:
  int dim_;
  std::vector<Zone> zones_;
};

/// Rotation-invariant sample (normalized Gaussian vector).
UnitVector sample_uniform(int d, RandomSource& rng);
/// Writes a uniform sample into `out` (size d) without allocating.
void sample_uniform_into(std::span<double> out, RandomSource& rng);

/// kappa_d: volume of the d-dimensional unit ball.
double unit_ball_volume(int d);
/// Surface area d * kappa_d of S^{d-1}.
double sphere_area(int d);

/// Normalized measure of a cap of angular radius theta in [0, pi].
double cap_measure_fraction(int d, double theta);
/// Normalized measure of a zone of half-width t in [0, pi/2].
double zone_measure_fraction(int d, double t);

/// Named constants for dimension d (epsilon fixed to 1).
struct PaperConstants {
  int d = 0;
  double m_d = 0;        ///< sqrt(2 pi d) + 1, zone half-width multiplier
  double kappa_d = 0;
  double kappa_dm1 = 0;
  double c_d = 0;        ///< saturated-net size factor at spacing alpha/2
  double C_star_d = 0;   ///< P(p in inflated zone) <= C*_d alpha
  double A_d = 0;        ///< root of (C*/x)^x = e^{-d-x} above e C*
  double epsilon = 1.0;

  /// kappa_{d-1} / (d kappa_d) > 1 / sqrt(2 pi d)
  bool bgw_holds() const;
};

PaperConstants constants(int d);

/// Root x* > e*c_star of x (ln x - ln c_star - 1) = dim, found by bisection.
double solve_A_equation(int dim, double c_star);

}  // namespace zonelab
