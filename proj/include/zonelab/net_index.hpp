#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zonelab/sphere.hpp"

namespace zonelab {

/// Ball tree over a fixed point set on S^{d-1}, specialised for counting
/// how many slabs |<u, x>| <= s contain each point.
class NetIndex {
 public:
  /// `flat` holds size*d coordinates of unit vectors.
  NetIndex(int d, std::span<const double> flat, std::size_t leaf_size = 12);

  int dim() const { return dim_; }
  std::size_t size() const { return perm_.size(); }

  /// One row per angular offset: counts[k][i] is the number of zones that
  /// contain point i after their half-width is shifted by offsets[k].
  /// Negative offsets round membership down, positive offsets round it up,
  /// a zero offset uses exact closed membership.
  std::vector<std::vector<std::uint32_t>> count_membership(const Arrangement& arr,
                                                           std::span<const double> offsets) const;

 private:
  struct Node {
    double radius = 0;  // angular, padded
    double cos_radius = 1, sin_radius = 0;
    std::uint32_t begin = 0, end = 0;
    std::int32_t left = -1, right = -1;
  };
  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  int dim_;
  std::size_t leaf_size_;
  std::vector<double> pts_;          // reordered copy
  std::vector<std::uint32_t> perm_;  // pts_ row -> original index
  std::vector<Node> nodes_;
  std::vector<double> centers_;  // d per node
  /// Disjoint subtrees of at most kBlockPoints points covering every point;
  /// counting sweeps all zones over one block at a time so it stays cached.
  std::vector<std::int32_t> blocks_;
};

}  // namespace zonelab
