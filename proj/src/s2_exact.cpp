#include "zonelab/s2_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zonelab::s2 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Arc sweeps for coverage only guard against rounding.
constexpr double kArcTolerance = 1e-12;
constexpr double kMinGap = 1e-13;
constexpr double kFlatRadius = 1e-14;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 normalize(const Vec3& a) {
  const double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}
Vec3 to_vec(std::span<const double> c) { return {c[0], c[1], c[2]}; }

struct Frame {
  Vec3 u, e1, e2;
  double h, rho;

  Frame(const Vec3& normal, double height) : u(normal), h(height), rho(std::sqrt(std::max(0.0, 1.0 - height * height))) {
    const std::size_t k = std::abs(u[0]) <= std::abs(u[1]) && std::abs(u[0]) <= std::abs(u[2]) ? 0
                          : std::abs(u[1]) <= std::abs(u[2])                                ? 1
                                                                                             : 2;
    Vec3 axis{0.0, 0.0, 0.0};
    axis[k] = 1.0;
    e1 = normalize(cross(u, axis));
    e2 = cross(u, e1);
  }

  Vec3 at(double phi) const {
    const double c = std::cos(phi), s = std::sin(phi);
    return normalize({h * u[0] + rho * (c * e1[0] + s * e2[0]), h * u[1] + rho * (c * e1[1] + s * e2[1]),
                      h * u[2] + rho * (c * e1[2] + s * e2[2])});
  }
};

struct Interval {
  double lo, hi;  // within [0, 2pi]
};

void push_wrapped(std::vector<Interval>& out, double lo, double hi) {
  if (hi - lo >= kTwoPi) {
    out.push_back({0.0, kTwoPi});
    return;
  }
  const double len = hi - lo;
  lo = std::fmod(lo, kTwoPi);
  if (lo < 0) lo += kTwoPi;
  hi = lo + len;
  if (hi <= kTwoPi) {
    out.push_back({lo, hi});
  } else {
    out.push_back({lo, kTwoPi});
    out.push_back({0.0, hi - kTwoPi});
  }
}

// Arcs of the frame circle where lo_dot <= <w, x(phi)> <= hi_dot.
// Returns false when the circle is (numerically) concentric with w, in
// which case the test is decided by the constant value.
bool dot_band_arcs(const Frame& f, const Vec3& w, double lo_dot, double hi_dot, std::vector<Interval>& out) {
  const double hc = f.h * dot(w, f.u);
  const double a = dot(w, f.e1), b = dot(w, f.e2);
  const double R = f.rho * std::hypot(a, b);
  if (R < kFlatRadius) {
    if (hc >= lo_dot && hc <= hi_dot) out.push_back({0.0, kTwoPi});
    return false;
  }
  const double L = (lo_dot - hc) / R, U = (hi_dot - hc) / R;
  if (L > 1.0 || U < -1.0 || L > U) return true;
  const double phi0 = std::atan2(b, a);
  const double alo = std::acos(std::min(1.0, U));   // smallest |psi|
  const double ahi = std::acos(std::max(-1.0, L));  // largest |psi|
  if (alo <= 0.0 && ahi >= kPi) {
    out.push_back({0.0, kTwoPi});
  } else if (alo <= 0.0) {
    push_wrapped(out, phi0 - ahi, phi0 + ahi);
  } else if (ahi >= kPi) {
    push_wrapped(out, phi0 + alo, phi0 + kTwoPi - alo);
  } else {
    push_wrapped(out, phi0 + alo, phi0 + ahi);
    push_wrapped(out, phi0 - ahi, phi0 - alo);
  }
  return true;
}

bool zone_arcs(const Frame& f, const Zone& z, double tol, std::vector<Interval>& out) {
  const Vec3 w = to_vec(z.pole().coords());
  return dot_band_arcs(f, w, -z.slab() - tol, z.slab() + tol, out);
}

struct Event {
  double at;
  int kind;  // 0 start, 1 end
  int set;   // 0 allowed, 1 covering
};

// Max number of closed intervals sharing a point, and one such angle.
std::pair<int, double> max_overlap(const std::vector<Interval>& iv) {
  std::vector<Event> ev;
  ev.reserve(2 * iv.size());
  for (const auto& i : iv) {
    ev.push_back({i.lo, 0, 0});
    ev.push_back({i.hi, 1, 0});
  }
  std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
    return x.at != y.at ? x.at < y.at : x.kind < y.kind;
  });
  int cur = 0, best = 0;
  double where = 0.0;
  for (const auto& e : ev) {
    if (e.kind == 0) {
      if (++cur > best) {
        best = cur;
        where = e.at;
      }
    } else {
      --cur;
    }
  }
  return {best, where};
}

// Midpoints of open arcs inside `allowed` and outside every `covering` arc.
std::vector<double> uncovered_midpoints(const std::vector<Interval>& allowed, const std::vector<Interval>& covering) {
  std::vector<Event> ev;
  ev.reserve(2 * (allowed.size() + covering.size()) + 2);
  for (const auto& i : allowed) {
    ev.push_back({i.lo, 0, 0});
    ev.push_back({i.hi, 1, 0});
  }
  for (const auto& i : covering) {
    ev.push_back({i.lo, 0, 1});
    ev.push_back({i.hi, 1, 1});
  }
  std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
    return x.at != y.at ? x.at < y.at : x.kind < y.kind;
  });
  std::vector<double> mids;
  int count[2] = {0, 0};
  double prev = 0.0;
  for (std::size_t k = 0; k < ev.size();) {
    const double at = ev[k].at;
    if (count[0] > 0 && count[1] == 0 && at - prev > kMinGap) mids.push_back(0.5 * (prev + at));
    for (; k < ev.size() && ev[k].at == at; ++k) count[ev[k].set] += ev[k].kind == 0 ? 1 : -1;
    prev = at;
  }
  return mids;
}

bool uncovered(const Arrangement& arr, const Vec3& x) { return arr.depth(std::span<const double>(x)) == 0; }

}  // namespace

CircleIntersection intersect(const Circle& a, const Circle& b) {
  CircleIntersection out;
  const double g = dot(a.normal, b.normal);
  const Vec3 n = cross(a.normal, b.normal);
  const double n2 = dot(n, n);
  if (n2 < 1e-20) {
    // Parallel planes: coincident circles or none.
    const double hb = g > 0 ? b.height : -b.height;
    out.degenerate = std::abs(a.height - hb) <= kTieTolerance;
    return out;
  }
  const double alpha = (a.height - b.height * g) / n2;
  const double beta = (b.height - a.height * g) / n2;
  const Vec3 p0{alpha * a.normal[0] + beta * b.normal[0], alpha * a.normal[1] + beta * b.normal[1],
                alpha * a.normal[2] + beta * b.normal[2]};
  const double disc = 1.0 - dot(p0, p0);
  if (disc < -1e-20) return out;
  if (disc <= 1e-20) {
    out.count = 1;
    out.points[0] = normalize(p0);
    out.degenerate = true;
    return out;
  }
  const double gamma = std::sqrt(disc / n2);
  out.count = 2;
  out.points[0] = normalize({p0[0] + gamma * n[0], p0[1] + gamma * n[1], p0[2] + gamma * n[2]});
  out.points[1] = normalize({p0[0] - gamma * n[0], p0[1] - gamma * n[1], p0[2] - gamma * n[2]});
  return out;
}

std::vector<Circle> boundary_circles(const Arrangement& arr) {
  if (arr.dim() != 3) throw std::invalid_argument("S^2 engines need d = 3");
  std::vector<Circle> out;
  out.reserve(2 * arr.size());
  for (const Zone& z : arr.zones()) {
    const Vec3 u = to_vec(z.pole().coords());
    out.push_back({u, z.slab()});
    out.push_back({u, -z.slab()});
  }
  return out;
}

DepthResult max_closed_depth(const Arrangement& arr, double tie_tol) {
  if (arr.dim() != 3) throw std::invalid_argument("max_closed_depth needs d = 3");
  DepthResult best;
  if (arr.empty()) return best;
  std::vector<Interval> iv;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Vec3 u = to_vec(arr[i].pole().coords());
    for (double sign : {1.0, -1.0}) {
      const Frame f(u, sign * arr[i].slab());
      iv.clear();
      for (std::size_t j = 0; j < arr.size(); ++j) {
        if (j == i) continue;
        if (!zone_arcs(f, arr[j], tie_tol, iv)) best.degenerate = true;
      }
      const auto [count, phi] = max_overlap(iv);
      if (count + 1 > best.depth) {
        best.depth = count + 1;
        best.witness = f.at(phi);
      }
    }
  }
  return best;
}

CoverageResult exact_coverage(const Arrangement& arr) {
  if (arr.dim() != 3) throw std::invalid_argument("exact_coverage needs d = 3");
  CoverageResult out;
  if (arr.empty()) {
    out.witness = Vec3{0.0, 0.0, 1.0};
    return out;
  }
  std::vector<Interval> allowed{{0.0, kTwoPi}}, covering;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Vec3 u = to_vec(arr[i].pole().coords());
    const double t = arr[i].half_width() + kOutwardOffset;
    for (double sign : {1.0, -1.0}) {
      if (t >= kPi / 2) {
        const Vec3 p{sign * u[0], sign * u[1], sign * u[2]};
        if (uncovered(arr, p)) {
          out.witness = p;
          return out;
        }
        continue;
      }
      const Frame f(u, sign * std::sin(t));
      covering.clear();
      for (std::size_t j = 0; j < arr.size(); ++j) {
        if (j != i && !zone_arcs(f, arr[j], kArcTolerance, covering)) out.degenerate = true;
      }
      for (double phi : uncovered_midpoints(allowed, covering)) {
        const Vec3 x = f.at(phi);
        if (uncovered(arr, x)) {
          out.witness = x;
          return out;
        }
        out.degenerate = true;
      }
    }
  }
  out.covered = true;
  return out;
}

CoverageResult cap_coverage(const Arrangement& arr, std::span<const std::size_t> candidates, const Vec3& center,
                            double radius) {
  if (arr.dim() != 3) throw std::invalid_argument("cap_coverage needs d = 3");
  if (!(radius > 0.0 && radius < kPi)) throw std::invalid_argument("cap radius must lie in (0, pi)");
  CoverageResult out;
  const double cos_r = std::cos(radius);
  auto in_cap = [&](const Vec3& x) { return dot(x, center) >= cos_r; };
  auto accept = [&](const Vec3& x) {
    if (in_cap(x) && uncovered(arr, x)) {
      out.witness = x;
      return true;
    }
    return false;
  };

  std::vector<Interval> allowed, covering;
  // Cap boundary circle.
  {
    const Frame f(center, cos_r);
    allowed.assign(1, {0.0, kTwoPi});
    covering.clear();
    for (std::size_t j : candidates) {
      if (!zone_arcs(f, arr[j], kArcTolerance, covering)) out.degenerate = true;
    }
    for (double phi : uncovered_midpoints(allowed, covering)) {
      if (accept(f.at(phi))) return out;
      out.degenerate = true;
    }
  }
  for (std::size_t i : candidates) {
    const Vec3 u = to_vec(arr[i].pole().coords());
    const double t = arr[i].half_width() + kOutwardOffset;
    for (double sign : {1.0, -1.0}) {
      if (t >= kPi / 2) {
        if (accept({sign * u[0], sign * u[1], sign * u[2]})) return out;
        continue;
      }
      const Frame f(u, sign * std::sin(t));
      allowed.clear();
      dot_band_arcs(f, center, cos_r, 2.0, allowed);
      if (allowed.empty()) continue;
      covering.clear();
      for (std::size_t j : candidates) {
        if (j != i && !zone_arcs(f, arr[j], kArcTolerance, covering)) out.degenerate = true;
      }
      for (double phi : uncovered_midpoints(allowed, covering)) {
        if (accept(f.at(phi))) return out;
        out.degenerate = true;
      }
    }
  }
  out.covered = true;
  return out;
}

int interior_depth_probe(const Arrangement& arr, int samples, RandomSource& rng, Vec3* witness) {
  if (arr.dim() != 3) throw std::invalid_argument("interior_depth_probe needs d = 3");
  if (samples < 0) throw std::invalid_argument("samples must be >= 0");
  int best = 0;
  Vec3 best_x{0.0, 0.0, 1.0};
  auto consider = [&](const Vec3& x) {
    const int depth = arr.depth(std::span<const double>(x), Boundary::open);
    if (depth > best) {
      best = depth;
      best_x = x;
    }
  };
  constexpr double eps = 1e-7;
  auto gradient = [](const Vec3& u, const Vec3& p) {
    const double c = dot(u, p);
    return Vec3{u[0] - c * p[0], u[1] - c * p[1], u[2] - c * p[2]};
  };
  const auto circles = arr.empty() ? std::vector<Circle>{} : boundary_circles(arr);
  for (std::size_t a = 0; a < circles.size(); ++a) {
    const Frame f(circles[a].normal, circles[a].height);
    const Vec3 p = f.at(0.0);
    const Vec3 g = normalize(gradient(circles[a].normal, p));
    for (double s : {eps, -eps}) consider(normalize({p[0] + s * g[0], p[1] + s * g[1], p[2] + s * g[2]}));
    for (std::size_t b = a + 1; b < circles.size(); ++b) {
      if (a / 2 == b / 2) continue;  // the two circles of one zone are disjoint
      const auto hit = intersect(circles[a], circles[b]);
      for (int k = 0; k < hit.count; ++k) {
        const Vec3& v = hit.points[static_cast<std::size_t>(k)];
        Vec3 ga = gradient(circles[a].normal, v), gb = gradient(circles[b].normal, v);
        if (dot(ga, ga) < 1e-30 || dot(gb, gb) < 1e-30) continue;
        ga = normalize(ga);
        gb = normalize(gb);
        for (double s1 : {eps, -eps}) {
          for (double s2 : {eps, -eps}) {
            consider(normalize({v[0] + s1 * ga[0] + s2 * gb[0], v[1] + s1 * ga[1] + s2 * gb[1],
                                v[2] + s1 * ga[2] + s2 * gb[2]}));
          }
        }
      }
    }
  }
  std::vector<double> x(3);
  for (int k = 0; k < samples; ++k) {
    sample_uniform_into(x, rng);
    consider({x[0], x[1], x[2]});
  }
  if (witness) *witness = best_x;
  return best;
}

}  // namespace zonelab::s2
