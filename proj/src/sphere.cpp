#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonelab/sphere.hpp"

namespace zonelab {

UnitVector UnitVector::normalized(std::vector<double> coords) {
  if (coords.size() < 2) throw std::invalid_argument("unit vector needs d >= 2");
  double norm2 = 0;
  for (double c : coords) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  for (double& c : coords) c /= norm;
  return UnitVector(std::move(coords));
}

UnitVector UnitVector::from_unit(std::vector<double> coords) {
  if (coords.size() < 2) throw std::invalid_argument("unit vector needs d >= 2");
  double norm2 = 0;
  for (double c : coords) norm2 += c * c;
  if (std::isfinite(norm2) && std::abs(std::sqrt(norm2) - 1.0) <= 1e-12) return UnitVector(std::move(coords));
  return normalized(std::move(coords));
}

UnitVector UnitVector::axis(int d, int k, double sign) {
  if (d < 2 || k < 0 || k >= d) throw std::invalid_argument("axis index out of range");
  std::vector<double> c(static_cast<std::size_t>(d), 0.0);
  c[static_cast<std::size_t>(k)] = sign < 0 ? -1.0 : 1.0;
  return UnitVector(std::move(c));
}

UnitVector UnitVector::operator-() const {
  std::vector<double> c = coords_;
  for (double& x : c) x = -x;
  return UnitVector(std::move(c));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const UnitVector& a, const UnitVector& b) { return dot(a.coords(), b.coords()); }

double spherical_distance(const UnitVector& p, const UnitVector& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("spherical_distance: dimension mismatch");
  // atan2 of (|p x q|, p.q) keeps precision for nearly equal or antipodal points.
  double chord_minus = 0, chord_plus = 0;
  for (int i = 0; i < p.dim(); ++i) {
    const double a = p[static_cast<std::size_t>(i)], b = q[static_cast<std::size_t>(i)];
    chord_minus += (a - b) * (a - b);
    chord_plus += (a + b) * (a + b);
  }
  return 2.0 * std::atan2(std::sqrt(chord_minus), std::sqrt(chord_plus));
}

Zone::Zone(UnitVector pole, double half_width)
    : pole_(std::move(pole)), half_width_(half_width), slab_(std::sin(half_width)) {
  if (!(half_width > 0.0) || !(half_width < std::numbers::pi / 2)) {
    throw std::invalid_argument("zone half-width must lie in (0, pi/2), got " +
                                std::to_string(half_width));
  }
}

bool Zone::contains(std::span<const double> x, Boundary mode) const {
  const double a = std::abs(dot(pole_.coords(), x));
  return mode == Boundary::closed ? a <= slab_ : a < slab_;
}

bool zone_contains(const Zone& z, const UnitVector& p, Boundary mode) {
  if (z.dim() != p.dim()) throw DimensionMismatch("zone_contains: dimension mismatch");
  return z.contains(p.coords(), mode);
}

double distance_to_central_sphere(const Zone& z, const UnitVector& p) {
  return std::abs(std::numbers::pi / 2 - spherical_distance(z.pole(), p));
}

Arrangement::Arrangement(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("arrangement dimension must be >= 2");
}

Arrangement::Arrangement(int dim, std::vector<Zone> zones) : Arrangement(dim) {
  for (auto& z : zones) add(std::move(z));
}

void Arrangement::add(Zone z) {
  if (z.dim() != dim_) throw DimensionMismatch("zone dimension differs from arrangement");
  zones_.push_back(std::move(z));
}

int Arrangement::depth(std::span<const double> x, Boundary mode) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("depth: dimension mismatch");
  int count = 0;
  for (const auto& z : zones_) count += z.contains(x, mode) ? 1 : 0;
  return count;
}

void sample_uniform_into(std::span<double> out, RandomSource& rng) {
  for (;;) {
    double n2 = 0;
    for (double& c : out) {
      c = rng.normal();
      n2 += c * c;
    }
    if (n2 > 1e-200) {
      const double inv = 1.0 / std::sqrt(n2);
      for (double& c : out) c *= inv;
      return;
    }
  }
}

UnitVector sample_uniform(int d, RandomSource& rng) {
  if (d < 2) throw std::invalid_argument("sample_uniform needs d >= 2");
  std::vector<double> c(static_cast<std::size_t>(d));
  sample_uniform_into(c, rng);
  return UnitVector::normalized(std::move(c));
}

}  // namespace zonelab
