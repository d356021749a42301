#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace zonelab {

/// Uniform hash grid over [-1,1]^d holding points of S^{d-1}.
/// Every point within Euclidean distance `reach` of a query lies in the
/// 3^d block of cells around the query's cell.
class PointGrid {
 public:
  PointGrid(int d, double reach);
  ~PointGrid();
  PointGrid(PointGrid&&) noexcept;
  PointGrid& operator=(PointGrid&&) noexcept;

  int dim() const { return dim_; }
  double reach() const { return reach_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& flat() const { return coords_; }

  /// Appends x; returns its index.
  std::uint32_t insert(std::span<const double> x);

  /// True iff some stored point has squared Euclidean distance < chord2
  /// from x. chord2 must not exceed reach^2.
  bool any_closer_than(std::span<const double> x, double chord2) const;

  /// Smallest squared distance from x to a stored point, or +inf when no
  /// point lies within reach.
  double nearest_chord2(std::span<const double> x) const;

  /// Coordinates (flattened) of every point in the 3^d block around x.
  /// Cached per cell; the returned reference stays valid until the next
  /// call to insert() or gather_block().
  const std::vector<double>& gather_block(std::span<const double> x);

 private:
  struct Impl;
  int dim_;
  double reach_;
  std::vector<double> coords_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace zonelab
