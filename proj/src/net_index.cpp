#include "zonelab/net_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zonelab {

namespace {

constexpr double kPi = std::numbers::pi;
// Angles here come from chord lengths, accurate to a few ulps.
constexpr double kDecisionMargin = 1e-12;
constexpr std::size_t kMaxOffsets = 16;
constexpr std::uint32_t kBlockPoints = 4096;

double angle_between(const double* a, std::span<const double> b) {
  double minus = 0, plus = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    minus += (a[i] - b[i]) * (a[i] - b[i]);
    plus += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return minus <= plus ? 2.0 * std::asin(std::min(1.0, std::sqrt(minus) / 2.0))
                       : kPi - 2.0 * std::asin(std::min(1.0, std::sqrt(plus) / 2.0));
}

}  // namespace

NetIndex::NetIndex(int d, std::span<const double> flat, std::size_t leaf_size)
    : dim_(d), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  if (d < 2) throw std::invalid_argument("NetIndex needs d >= 2");
  const auto du = static_cast<std::size_t>(d);
  if (flat.size() % du != 0) throw std::invalid_argument("NetIndex: coordinate count not a multiple of d");
  const std::size_t m = flat.size() / du;
  if (m >= std::numeric_limits<std::uint32_t>::max()) throw std::length_error("NetIndex too large");
  perm_.resize(m);
  for (std::size_t i = 0; i < m; ++i) perm_[i] = static_cast<std::uint32_t>(i);
  pts_.assign(flat.begin(), flat.end());  // original order during build
  nodes_.reserve(2 * (m / leaf_size_ + 1));
  if (m > 0) build(0, static_cast<std::uint32_t>(m));
  std::vector<double> reordered(flat.size());
  for (std::size_t r = 0; r < m; ++r) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(perm_[r] * du), du,
                reordered.begin() + static_cast<std::ptrdiff_t>(r * du));
  }
  pts_ = std::move(reordered);

  std::vector<std::int32_t> todo;
  if (!nodes_.empty()) todo.push_back(0);
  while (!todo.empty()) {
    const std::int32_t id = todo.back();
    todo.pop_back();
    const Node& nd = nodes_[static_cast<std::size_t>(id)];
    if (nd.end - nd.begin <= kBlockPoints || nd.left < 0) {
      blocks_.push_back(id);
    } else {
      todo.push_back(nd.right);
      todo.push_back(nd.left);
    }
  }
}

std::int32_t NetIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto du = static_cast<std::size_t>(dim_);
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  centers_.resize(centers_.size() + du);
  Node node;
  node.begin = begin;
  node.end = end;

  std::vector<double> mean(du, 0.0), lo(du, 2.0), hi(du, -2.0);
  for (std::uint32_t r = begin; r < end; ++r) {
    const double* p = pts_.data() + perm_[r] * du;
    for (std::size_t i = 0; i < du; ++i) {
      mean[i] += p[i];
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  double norm = 0;
  for (double v : mean) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 1e-9 * (end - begin)) {
    for (double& v : mean) v /= norm;
    double radius = 0;
    for (std::uint32_t r = begin; r < end; ++r) {
      radius = std::max(radius, angle_between(pts_.data() + perm_[r] * du, mean));
    }
    node.radius = std::min(kPi, radius + kDecisionMargin);
  } else {
    mean.assign(du, 0.0);
    mean[0] = 1.0;
    node.radius = kPi;
  }
  std::copy(mean.begin(), mean.end(), centers_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(id) * du));
  node.cos_radius = std::cos(node.radius);
  node.sin_radius = std::sin(node.radius);

  if (end - begin > leaf_size_) {
    std::size_t axis = 0;
    for (std::size_t i = 1; i < du; ++i) {
      if (hi[i] - lo[i] > hi[axis] - lo[axis]) axis = i;
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return pts_[a * du + axis] < pts_[b * du + axis];
                     });
    node.left = build(begin, mid);
    node.right = build(mid, end);
  }
  nodes_[static_cast<std::size_t>(id)] = std::move(node);
  return id;
}

std::vector<std::vector<std::uint32_t>> NetIndex::count_membership(
    const Arrangement& arr, std::span<const double> offsets) const {
  if (arr.dim() != dim_) throw DimensionMismatch("NetIndex: arrangement dimension differs");
  const std::size_t K = offsets.size();
  if (K == 0 || K > kMaxOffsets) throw std::invalid_argument("NetIndex: 1..16 offsets supported");
  const auto du = static_cast<std::size_t>(dim_);
  const std::size_t m = size();

  std::vector<std::vector<std::uint32_t>> out(K, std::vector<std::uint32_t>(m, 0));
  if (m == 0) return out;

  // Per zone: the slab for each offset and the mask of nonempty ones.
  const std::size_t nz = arr.size();
  std::vector<double> slab(nz * K);
  std::vector<std::uint32_t> zone_mask(nz, 0);
  for (std::size_t j = 0; j < nz; ++j) {
    const Zone& z = arr[j];
    for (std::size_t k = 0; k < K; ++k) {
      const double t = z.half_width() + offsets[k];
      double& s = slab[j * K + k];
      if (offsets[k] == 0.0) {
        s = z.slab();
      } else if (t <= 0.0) {
        continue;  // empty zone
      } else if (t >= kPi / 2) {
        s = std::numeric_limits<double>::infinity();
      } else {
        s = std::sin(t) + (offsets[k] < 0 ? -kDecisionMargin : kDecisionMargin);
      }
      zone_mask[j] |= 1u << k;
    }
  }

  // Counters interleaved by offset: [row * K + k], [node * K + k].
  std::vector<std::uint32_t> node_count(nodes_.size() * K, 0);
  std::vector<std::uint32_t> row_count(m * K, 0);
  std::vector<std::pair<std::int32_t, std::uint32_t>> stack;

  for (const std::int32_t block : blocks_) {
    for (std::size_t j = 0; j < nz; ++j) {
      if (zone_mask[j] == 0) continue;
      const double* u = arr[j].pole().coords().data();
      const double* sl = slab.data() + j * K;
      stack.clear();
      stack.emplace_back(block, zone_mask[j]);
      while (!stack.empty()) {
        auto [id, active] = stack.back();
        stack.pop_back();
        const auto uid = static_cast<std::size_t>(id);
        const Node& nd = nodes_[uid];
        if (nd.radius < kPi) {
          // <x,u> over the cap ranges over [cos(theta + r), cos(theta - r)],
          // clamped at +-1 when the cap reaches u or -u.
          // sin(theta) = |a - b| |a + b| / 2 keeps full accuracy near 0 and pi.
          const double* ctr = centers_.data() + uid * du;
          double c = 0, minus = 0, plus = 0;
          for (std::size_t i = 0; i < du; ++i) {
            c += ctr[i] * u[i];
            minus += (ctr[i] - u[i]) * (ctr[i] - u[i]);
            plus += (ctr[i] + u[i]) * (ctr[i] + u[i]);
          }
          c = std::clamp(c, -1.0, 1.0);
          const double sc = std::min(1.0, 0.5 * std::sqrt(minus * plus));
          const double dot_hi = c >= nd.cos_radius ? 1.0 : c * nd.cos_radius + sc * nd.sin_radius;
          const double dot_lo = c <= -nd.cos_radius ? -1.0 : c * nd.cos_radius - sc * nd.sin_radius;
          const double max_abs = std::max(std::abs(dot_hi), std::abs(dot_lo));
          const double min_abs =
              (dot_lo <= 0.0 && dot_hi >= 0.0) ? 0.0 : std::min(std::abs(dot_hi), std::abs(dot_lo));
          for (std::size_t k = 0; k < K; ++k) {
            if (!(active & (1u << k))) continue;
            if (max_abs <= sl[k] - kDecisionMargin) {
              ++node_count[uid * K + k];
              active &= ~(1u << k);
            } else if (min_abs > sl[k] + kDecisionMargin) {
              active &= ~(1u << k);
            }
          }
          if (!active) continue;
        }
        if (nd.left < 0) {
          for (std::uint32_t r = nd.begin; r < nd.end; ++r) {
            const double* p = pts_.data() + r * du;
            double s = 0;
            for (std::size_t i = 0; i < du; ++i) s += u[i] * p[i];
            const double a = std::abs(s);
            std::uint32_t* rc = row_count.data() + static_cast<std::size_t>(r) * K;
            for (std::size_t k = 0; k < K; ++k) {
              if ((active & (1u << k)) && a <= sl[k]) ++rc[k];
            }
          }
        } else {
          stack.emplace_back(nd.left, active);
          stack.emplace_back(nd.right, active);
        }
      }
    }
  }

  // Nodes are stored in preorder, so parents precede children.
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& nd = nodes_[id];
    const std::uint32_t* nc = node_count.data() + id * K;
    if (nd.left >= 0) {
      for (std::size_t k = 0; k < K; ++k) {
        node_count[static_cast<std::size_t>(nd.left) * K + k] += nc[k];
        node_count[static_cast<std::size_t>(nd.right) * K + k] += nc[k];
      }
    } else {
      for (std::uint32_t r = nd.begin; r < nd.end; ++r) {
        for (std::size_t k = 0; k < K; ++k) row_count[static_cast<std::size_t>(r) * K + k] += nc[k];
      }
    }
  }

  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < K; ++k) out[k][perm_[r]] = row_count[r * K + k];
  }
  return out;
}

}  // namespace zonelab
