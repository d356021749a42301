#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "zonelab/sphere.hpp"

namespace zonelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  const double half = 0.5 * d;
  return std::exp(half * std::log(kPi) - std::lgamma(half + 1.0));
}

double sphere_area(int d) { return d * unit_ball_volume(d); }

double cap_measure_fraction(int d, double theta) {
  if (d < 2) throw std::invalid_argument("cap_measure_fraction needs d >= 2");
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::invalid_argument("cap angle must lie in [0, pi]");
  }
  if (theta > kPi / 2) return 1.0 - cap_measure_fraction(d, kPi - theta);
  if (theta == 0.0) return 0.0;
  const double s = std::sin(theta);
  return 0.5 * boost::math::ibeta(0.5 * (d - 1), 0.5, s * s);
}

double zone_measure_fraction(int d, double t) {
  if (!(t >= 0.0 && t <= kPi / 2)) {
    throw std::invalid_argument("zone half-width must lie in [0, pi/2]");
  }
  if (t == 0.0) return 0.0;
  return 1.0 - 2.0 * cap_measure_fraction(d, kPi / 2 - t);
}

bool PaperConstants::bgw_holds() const {
  return kappa_dm1 / (d * kappa_d) > 1.0 / std::sqrt(2.0 * kPi * d);
}

double solve_A_equation(int dim, double c_star) {
  const auto lhs = [&](double x) { return x * (std::log(x) - std::log(c_star) - 1.0) - dim; };
  double lo = std::numbers::e * c_star;
  double hi = lo + dim + 10.0;
  if (!(lhs(lo) < 0.0) || !(lhs(hi) > 0.0)) {
    throw std::runtime_error("A_d bracket failure for d=" + std::to_string(dim));
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (lhs(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(lhs(lo)) <= std::abs(lhs(hi)) ? lo : hi;
}

PaperConstants constants(int d) {
  if (d < 3) throw std::invalid_argument("constants need d >= 3");
  PaperConstants c;
  c.d = d;
  c.m_d = std::sqrt(2.0 * kPi * d) + 1.0;
  c.kappa_d = unit_ball_volume(d);
  c.kappa_dm1 = unit_ball_volume(d - 1);
  c.c_d = 2.0 * std::pow(2.0, 0.5 * (d - 1)) * d * c.kappa_d / c.kappa_dm1;
  c.C_star_d = 4.0 * (c.m_d + 1.0) * (d - 1) * c.kappa_dm1 / (d * c.kappa_d);
  c.A_d = solve_A_equation(d, c.C_star_d);
  return c;
}

}  // namespace zonelab
