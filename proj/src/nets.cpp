#include "zonelab/nets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "zonelab/errors.hpp"

namespace zonelab {

namespace {

constexpr double kPi = std::numbers::pi;

double chord_of(double angle) { return 2.0 * std::sin(angle / 2.0); }
double angle_of_chord2(double c2) { return 2.0 * std::asin(std::min(1.0, std::sqrt(c2) / 2.0)); }

// Squared chord below which a candidate is rejected. The relative pad keeps
// accepted pairs at spherical distance >= omega after rounding.
double rejection_chord2(double omega) {
  const double c = chord_of(omega) * (1.0 + 1e-12);
  return c * c;
}

double nearest_in_block(const std::vector<double>& block, std::span<const double> x) {
  const std::size_t d = x.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t off = 0; off < block.size(); off += d) {
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += (x[i] - block[off + i]) * (x[i] - block[off + i]);
    best = std::min(best, s);
  }
  return best;
}

// Sweeps the 2d faces of the cube [-1,1]^d. A cell is a box of half-side hs
// in the d-1 free coordinates of a face; its radial projection has angular
// radius <= hs*sqrt(d-1) about the projected center (the face plane is at
// distance 1 from the origin, so arclength never exceeds planar length).
// Points are appended to `grid`; returns the covering-radius bound.
double gap_fill(PointGrid& grid, int d, double omega, double target, double r_min) {
  constexpr std::size_t kMaxFree = 15;
  const auto du = static_cast<std::size_t>(d);
  const std::size_t free = du - 1;
  if (free > kMaxFree) throw std::invalid_argument("gap fill supports d <= 16");
  const double sqrt_free = std::sqrt(static_cast<double>(free));
  const double accept_chord2 = rejection_chord2(omega);
  const double accept_limit = target * (1.0 - 2e-12);
  const auto G = static_cast<long>(std::ceil(sqrt_free / (0.5 * target)));
  const double hs0 = 1.0 / static_cast<double>(G);
  const double r0 = hs0 * sqrt_free;
  const double local_reach = std::min(kPi, target + r0);
  const double local_c2 = std::pow(chord_of(local_reach) * (1.0 + 1e-9), 2);

  // Coarser grid so one block holds everything within local_reach.
  PointGrid coarse(d, std::min(2.0, chord_of(local_reach) * (1.0 + 1e-9)));
  for (std::size_t i = 0; i < grid.size(); ++i) coarse.insert(grid.point(i));

  struct Cell {
    std::array<double, kMaxFree> y;
    double hs;
  };
  std::vector<Cell> stack;
  std::vector<double> x(du), x0(du), local;
  double bound = 0.0;

  auto project = [&](int axis, double sign, const double* y, std::vector<double>& out) {
    double n2 = 1.0;
    for (std::size_t i = 0; i < free; ++i) n2 += y[i] * y[i];
    const double inv = 1.0 / std::sqrt(n2);
    std::size_t j = 0;
    for (std::size_t i = 0; i < du; ++i) out[i] = (static_cast<int>(i) == axis ? sign : y[j++]) * inv;
  };

  std::vector<long> idx(free, 0);
  for (int axis = 0; axis < d; ++axis) {
    for (double sign : {1.0, -1.0}) {
      std::fill(idx.begin(), idx.end(), 0);
      for (bool more = true; more;) {
        Cell root{};
        root.hs = hs0;
        for (std::size_t i = 0; i < free; ++i) root.y[i] = -1.0 + (2.0 * static_cast<double>(idx[i]) + 1.0) * hs0;
        project(axis, sign, root.y.data(), x0);
        local.clear();
        const auto& block = coarse.gather_block(x0);
        for (std::size_t off = 0; off < block.size(); off += du) {
          double s = 0;
          for (std::size_t i = 0; i < du; ++i) s += (x0[i] - block[off + i]) * (x0[i] - block[off + i]);
          if (s <= local_c2) local.insert(local.end(), block.begin() + static_cast<std::ptrdiff_t>(off),
                                          block.begin() + static_cast<std::ptrdiff_t>(off + du));
        }
        stack.push_back(root);
        while (!stack.empty()) {
          const Cell c = stack.back();
          stack.pop_back();
          project(axis, sign, c.y.data(), x);
          const double r = c.hs * sqrt_free;
          const double c2 = nearest_in_block(local, x);
          const double D = std::isfinite(c2) ? angle_of_chord2(c2) : kPi;
          if (D + r <= accept_limit) {
            bound = std::max(bound, D + r);
          } else if (c2 >= accept_chord2) {
            grid.insert(x);
            coarse.insert(x);
            local.insert(local.end(), x.begin(), x.end());
            bound = std::max(bound, r);
          } else if (r <= r_min) {
            bound = std::max(bound, D + r);
          } else {
            const double h = c.hs / 2.0;
            for (std::size_t mask = 0; mask < (std::size_t{1} << free); ++mask) {
              Cell child = c;
              child.hs = h;
              for (std::size_t i = 0; i < free; ++i) child.y[i] += (mask >> i & 1u) ? h : -h;
              stack.push_back(child);
            }
          }
        }
        more = false;
        for (std::size_t i = 0; i < free; ++i) {
          if (++idx[i] < G) {
            more = true;
            break;
          }
          idx[i] = 0;
        }
      }
    }
  }
  return bound * (1.0 + 1e-12) + 1e-15;
}

}  // namespace

SaturatedNet::SaturatedNet(int dim, double omega, std::vector<double> flat, std::uint64_t rejections,
                           std::uint64_t seed, double covering_radius_bound)
    : dim_(dim), omega_(omega), flat_(std::move(flat)), rejections_(rejections), seed_(seed),
      cover_bound_(covering_radius_bound) {
  if (dim < 2) throw std::invalid_argument("net dimension must be >= 2");
  if (!(omega > 0.0 && omega <= kPi / 2)) throw std::invalid_argument("net omega must lie in (0, pi/2]");
  if (flat_.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("net coordinates are not a multiple of d");
  }
}

UnitVector SaturatedNet::unit_point(std::size_t i) const {
  auto p = point(i);
  return UnitVector::normalized(std::vector<double>(p.begin(), p.end()));
}

SaturatedNet build_saturated_net(int d, double omega, RandomSource& rng, std::uint64_t rejection_budget,
                                 const NetOptions& options) {
  if (d < 3) throw std::invalid_argument("build_saturated_net needs d >= 3");
  if (!(omega > 0.0 && omega <= kPi / 2)) throw std::invalid_argument("omega must lie in (0, pi/2]");
  if (rejection_budget < 1) throw std::invalid_argument("rejection budget must be >= 1");
  if (options.gap_fill && !(options.cover_slack >= 1.0)) throw std::invalid_argument("cover_slack must be >= 1");

  const double target = options.gap_fill ? options.cover_slack * omega : omega;
  PointGrid grid(d, std::min(2.0, chord_of(omega) * (1.0 + 1e-9)));
  const double reject_c2 = rejection_chord2(omega);

  std::vector<double> x(static_cast<std::size_t>(d));
  std::uint64_t run = 0;
  while (run < rejection_budget) {
    sample_uniform_into(x, rng);
    if (grid.any_closer_than(x, reject_c2)) {
      ++run;
    } else {
      grid.insert(x);
      run = 0;
    }
  }

  double bound = 0.0;
  if (options.gap_fill) {
    bound = gap_fill(grid, d, omega, target, options.min_cell_fraction * omega);
  }
  return SaturatedNet(d, omega, grid.flat(), run, rng.seed(), bound);
}

Lemma1Window lemma1_window(int d, double omega, double epsilon) {
  if (d < 3) throw std::invalid_argument("lemma1_window needs d >= 3");
  if (!(omega > 0.0 && omega < kPi / 2)) throw std::invalid_argument("omega must lie in (0, pi/2)");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  const double ratio = d * unit_ball_volume(d) / unit_ball_volume(d - 1);
  const double scale = std::pow(omega, -(d - 1));
  return {ratio * scale / (1.0 + epsilon), (1.0 + epsilon) * std::pow(8.0, 0.5 * (d - 1)) * ratio * scale};
}

double nearest_net_distance(const SaturatedNet& net, const UnitVector& p) {
  if (net.size() == 0) throw std::invalid_argument("nearest_net_distance: empty net");
  if (p.dim() != net.dim()) throw DimensionMismatch("nearest_net_distance: dimension mismatch");
  double best_minus = std::numeric_limits<double>::infinity(), best_plus = 0;
  for (std::size_t j = 0; j < net.size(); ++j) {
    auto q = net.point(j);
    double minus = 0, plus = 0;
    for (int i = 0; i < p.dim(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      minus += (p[k] - q[k]) * (p[k] - q[k]);
      plus += (p[k] + q[k]) * (p[k] + q[k]);
    }
    if (minus < best_minus) {
      best_minus = minus;
      best_plus = plus;
    }
  }
  return 2.0 * std::atan2(std::sqrt(best_minus), std::sqrt(best_plus));
}

NetLocator::NetLocator(const SaturatedNet& net)
    : grid_(net.dim(), std::min(2.0, chord_of(std::min(kPi, 2.0 * net.covering_radius())))),
      reach_angle_(std::min(kPi, 2.0 * net.covering_radius())) {
  for (std::size_t i = 0; i < net.size(); ++i) grid_.insert(net.point(i));
}

double NetLocator::nearest_distance(std::span<const double> p) const {
  const double c2 = grid_.nearest_chord2(p);
  return std::isfinite(c2) ? angle_of_chord2(c2) : std::numeric_limits<double>::infinity();
}

bool verify_packing(const SaturatedNet& net) {
  PointGrid grid(net.dim(), std::min(2.0, chord_of(net.omega()) * (1.0 + 1e-9)));
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto p = net.point(i);
    const double c2 = grid.nearest_chord2(p);
    if (std::isfinite(c2) && angle_of_chord2(c2) < net.omega()) return false;
    grid.insert(p);
  }
  return true;
}

void write_net_csv(std::ostream& os, const SaturatedNet& net) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", net.omega());
  os << "# d=" << net.dim() << " omega=" << buf << " seed=" << net.rng_seed()
     << " rejections=" << net.saturation_rejections() << '\n';
  if (net.covering_certified()) {
    std::snprintf(buf, sizeof buf, "%.17g", net.covering_radius_bound());
    os << "# covering_radius_bound=" << buf << '\n';
  }
  for (std::size_t j = 0; j < net.size(); ++j) {
    auto p = net.point(j);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

SaturatedNet read_net_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("net csv: missing header");
  int d = 0;
  double omega = 0;
  unsigned long long seed = 0, rej = 0;
  if (std::sscanf(line.c_str(), "# d=%d omega=%lf seed=%llu rejections=%llu", &d, &omega, &seed, &rej) != 4) {
    throw ParseError("net csv: bad header: " + line);
  }
  double bound = 0;
  std::vector<double> flat;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (std::sscanf(line.c_str(), "# covering_radius_bound=%lf", &bound) != 1) {
        throw ParseError("net csv: unknown comment line " + std::to_string(row));
      }
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    int count = 0;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        flat.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("net csv: bad number on line " + std::to_string(row));
      }
      ++count;
    }
    if (count != d) throw ParseError("net csv: expected " + std::to_string(d) + " columns on line " + std::to_string(row));
  }
  try {
    return SaturatedNet(d, omega, std::move(flat), rej, seed, bound);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("net csv: ") + e.what());
  }
}

}  // namespace zonelab
