#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "zonelab/point_grid.hpp"
#include "zonelab/random.hpp"
#include "zonelab/sphere.hpp"

namespace zonelab {

struct NetOptions {
  /// After dart throwing, sweep a cubed-sphere cell grid and insert every
  /// cell center still at distance >= omega from the net. Yields a
  /// certified covering-radius bound.
  bool gap_fill = true;
  /// Cells whose covering bound is <= cover_slack * omega are accepted
  /// without refinement. 1 certifies (up to residual cells) radius omega.
  double cover_slack = 1.0;
  /// Refinement stops at cells of angular radius min_cell_fraction * omega.
  double min_cell_fraction = 1e-6;
};

/// Points pairwise >= omega apart that no further point can join (up to
/// the saturation evidence recorded with it).
class SaturatedNet {
 public:
  SaturatedNet(int dim, double omega, std::vector<double> flat, std::uint64_t rejections,
               std::uint64_t seed, double covering_radius_bound = 0.0);

  int dim() const { return dim_; }
  double omega() const { return omega_; }
  std::size_t size() const { return flat_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  UnitVector unit_point(std::size_t i) const;
  const std::vector<double>& flat() const { return flat_; }

  /// Consecutive rejected candidates when dart throwing stopped.
  std::uint64_t saturation_rejections() const { return rejections_; }
  std::uint64_t rng_seed() const { return seed_; }

  /// Certified bound on the covering radius, or 0 when only the
  /// probabilistic rejection evidence exists.
  double covering_radius_bound() const { return cover_bound_; }
  bool covering_certified() const { return cover_bound_ > 0.0; }
  /// Radius to use for inflation/deflation: the certified bound when
  /// present, omega otherwise (probabilistic net).
  double covering_radius() const { return cover_bound_ > 0.0 ? cover_bound_ : omega_; }

 private:
  int dim_;
  double omega_;
  std::vector<double> flat_;
  std::uint64_t rejections_;
  std::uint64_t seed_;
  double cover_bound_;
};

SaturatedNet build_saturated_net(int d, double omega, RandomSource& rng, std::uint64_t rejection_budget,
                                 const NetOptions& options = {});

struct Lemma1Window {
  double lower;
  double upper;
};
Lemma1Window lemma1_window(int d, double omega, double epsilon);

/// Min spherical distance from p to the net (linear scan).
double nearest_net_distance(const SaturatedNet& net, const UnitVector& p);

/// Grid-accelerated nearest-distance queries against a fixed net.
class NetLocator {
 public:
  explicit NetLocator(const SaturatedNet& net);
  /// Exact nearest distance when it is < reach angle, else a lower bound
  /// >= reach angle (reported as +inf).
  double nearest_distance(std::span<const double> p) const;
  double reach_angle() const { return reach_angle_; }

 private:
  PointGrid grid_;
  double reach_angle_;
};

/// Minimum pairwise distance >= omega, via the hash grid.
bool verify_packing(const SaturatedNet& net);

/// Header "# d=<d> omega=<omega> seed=<seed> rejections=<R>", optional
/// "# covering_radius_bound=<b>", then one point per row.
void write_net_csv(std::ostream& os, const SaturatedNet& net);
SaturatedNet read_net_csv(std::istream& is);

}  // namespace zonelab
