#include "zonelab/point_grid.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/inlined_vector.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zonelab {

namespace {
constexpr std::size_t kGatherCacheLimit = 1u << 15;
}

struct PointGrid::Impl {
  double cell = 0;
  int ncell = 0;
  int bits = 0;
  // Zero offset first so early-exit queries look at the home cell first.
  std::vector<std::vector<int>> offsets;
  absl::flat_hash_map<std::uint64_t, absl::InlinedVector<std::uint32_t, 4>> cells;
  absl::flat_hash_map<std::uint64_t, std::vector<double>> gather_cache;
  std::vector<int> scratch;

  void cell_of(std::span<const double> x, std::vector<int>& c) const {
    c.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int k = static_cast<int>(std::floor((x[i] + 1.0) / cell));
      c[i] = std::clamp(k, 0, ncell - 1);
    }
  }

  std::uint64_t pack(const std::vector<int>& c) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      key |= static_cast<std::uint64_t>(c[i]) << (bits * static_cast<int>(i));
    }
    return key;
  }

  // Calls f(key) for each in-range neighbor of home; stops when f returns true.
  template <class F>
  bool for_each_neighbor(const std::vector<int>& home, F&& f) const {
    std::vector<int> c(home.size());
    for (const auto& off : offsets) {
      bool ok = true;
      for (std::size_t i = 0; i < home.size(); ++i) {
        c[i] = home[i] + off[i];
        if (c[i] < 0 || c[i] >= ncell) {
          ok = false;
          break;
        }
      }
      if (ok && f(pack(c))) return true;
    }
    return false;
  }
};

PointGrid::PointGrid(int d, double reach) : dim_(d), reach_(reach), impl_(std::make_unique<Impl>()) {
  if (d < 2) throw std::invalid_argument("PointGrid needs d >= 2");
  if (!(reach > 0.0) || !(reach <= 2.0)) throw std::invalid_argument("PointGrid reach must be in (0, 2]");
  impl_->cell = reach;
  impl_->ncell = static_cast<int>(std::ceil(2.0 / reach)) + 1;
  impl_->bits = std::bit_width(static_cast<unsigned>(impl_->ncell));
  if (impl_->bits * d > 64) {
    throw std::invalid_argument("PointGrid: cell keys do not fit 64 bits for this d and reach");
  }
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  impl_->offsets.reserve(total);
  std::vector<int> off(static_cast<std::size_t>(d), -1);
  for (std::size_t t = 0; t < total; ++t) {
    impl_->offsets.push_back(off);
    for (int i = 0; i < d; ++i) {
      if (++off[static_cast<std::size_t>(i)] <= 1) break;
      off[static_cast<std::size_t>(i)] = -1;
    }
  }
  auto zero = std::find(impl_->offsets.begin(), impl_->offsets.end(),
                        std::vector<int>(static_cast<std::size_t>(d), 0));
  std::iter_swap(impl_->offsets.begin(), zero);
}

PointGrid::~PointGrid() = default;
PointGrid::PointGrid(PointGrid&&) noexcept = default;
PointGrid& PointGrid::operator=(PointGrid&&) noexcept = default;

std::uint32_t PointGrid::insert(std::span<const double> x) {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("PointGrid::insert: dimension mismatch");
  if (size() >= std::numeric_limits<std::uint32_t>::max()) throw std::length_error("PointGrid full");
  const auto idx = static_cast<std::uint32_t>(size());
  coords_.insert(coords_.end(), x.begin(), x.end());
  impl_->cell_of(x, impl_->scratch);
  impl_->cells[impl_->pack(impl_->scratch)].push_back(idx);
  if (!impl_->gather_cache.empty()) {
    impl_->for_each_neighbor(impl_->scratch, [&](std::uint64_t key) {
      impl_->gather_cache.erase(key);
      return false;
    });
  }
  return idx;
}

bool PointGrid::any_closer_than(std::span<const double> x, double chord2) const {
  std::vector<int> home;
  impl_->cell_of(x, home);
  const auto d = static_cast<std::size_t>(dim_);
  return impl_->for_each_neighbor(home, [&](std::uint64_t key) {
    auto it = impl_->cells.find(key);
    if (it == impl_->cells.end()) return false;
    for (std::uint32_t j : it->second) {
      const double* p = coords_.data() + j * d;
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
      if (s < chord2) return true;
    }
    return false;
  });
}

double PointGrid::nearest_chord2(std::span<const double> x) const {
  std::vector<int> home;
  impl_->cell_of(x, home);
  const auto d = static_cast<std::size_t>(dim_);
  double best = std::numeric_limits<double>::infinity();
  impl_->for_each_neighbor(home, [&](std::uint64_t key) {
    auto it = impl_->cells.find(key);
    if (it == impl_->cells.end()) return false;
    for (std::uint32_t j : it->second) {
      const double* p = coords_.data() + j * d;
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
      best = std::min(best, s);
    }
    return false;
  });
  return best <= reach_ * reach_ ? best : std::numeric_limits<double>::infinity();
}

const std::vector<double>& PointGrid::gather_block(std::span<const double> x) {
  impl_->cell_of(x, impl_->scratch);
  const std::uint64_t home = impl_->pack(impl_->scratch);
  if (auto it = impl_->gather_cache.find(home); it != impl_->gather_cache.end()) return it->second;
  if (impl_->gather_cache.size() >= kGatherCacheLimit) impl_->gather_cache.clear();
  std::vector<double> block;
  const auto d = static_cast<std::size_t>(dim_);
  impl_->for_each_neighbor(impl_->scratch, [&](std::uint64_t key) {
    auto it = impl_->cells.find(key);
    if (it == impl_->cells.end()) return false;
    for (std::uint32_t j : it->second) {
      block.insert(block.end(), coords_.begin() + static_cast<std::ptrdiff_t>(j * d),
                   coords_.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
    }
    return false;
  });
  return impl_->gather_cache.emplace(home, std::move(block)).first->second;
}

}  // namespace zonelab
