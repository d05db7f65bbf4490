#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "hypsemi/moebius.hpp"

namespace testsupport {

using hypsemi::BoundaryPoint;
using hypsemi::MoebiusMap;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline BoundaryPoint random_point(std::mt19937_64& rng) {
  return BoundaryPoint::from_disc_angle(uniform(rng, 0.0, hypsemi::kTwoPi));
}

// Well-conditioned random element of SL(2,R).
inline MoebiusMap random_map(std::mt19937_64& rng) {
  for (;;) {
    const double a = uniform(rng, -2.0, 2.0), b = uniform(rng, -2.0, 2.0);
    const double c = uniform(rng, -2.0, 2.0), d = uniform(rng, -2.0, 2.0);
    const double det = a * d - b * c;
    if (det > 0.2) return MoebiusMap::normalize(a, b, c, d);
    if (det < -0.2) return MoebiusMap::normalize(b, a, d, c);
  }
}

// Random hyperbolic map with endpoints at least min_gap apart on the circle.
inline MoebiusMap random_hyperbolic(std::mt19937_64& rng, double tau_lo = 0.05,
                                    double tau_hi = 4.0,
                                    double min_gap = 0.3) {
  for (;;) {
    const BoundaryPoint beta = random_point(rng);
    const BoundaryPoint alpha = random_point(rng);
    if (hypsemi::angular_distance(alpha, beta) < min_gap) continue;
    return hypsemi::from_axis_and_length(beta, alpha,
                                         uniform(rng, tau_lo, tau_hi));
  }
}

inline double max_entry_diff(const MoebiusMap& f, const MoebiusMap& g) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) {
    m = std::max(m, std::fabs(f.entries()[i] - g.entries()[i]));
  }
  return m;
}

// f with axis 0 -> infinity and g with axis C -> 1, so C(f, g) = C.
inline std::pair<MoebiusMap, MoebiusMap> pair_with_cr(double c, double tau_f,
                                                      double tau_g) {
  using hypsemi::from_axis_and_length;
  return {from_axis_and_length(BoundaryPoint::from_real(0.0),
                               BoundaryPoint::infinity(), tau_f),
          from_axis_and_length(BoundaryPoint::from_real(c),
                               BoundaryPoint::from_real(1.0), tau_g)};
}

inline BoundaryPoint disc_point(double x, double y) {
  return hypsemi::cayley_from_disc_boundary({x, y});
}

// Five generators on the unit disc: four axes along the sides of the
// rectangle on (+-0.8, +-0.6) and one along the real diameter.
inline std::vector<MoebiusMap> rectangle_five(double tau) {
  const BoundaryPoint p1 = disc_point(-0.8, 0.6), p2 = disc_point(0.8, 0.6);
  const BoundaryPoint p3 = disc_point(0.8, -0.6), p4 = disc_point(-0.8, -0.6);
  using hypsemi::from_axis_and_length;
  return {from_axis_and_length(p1, p4, tau), from_axis_and_length(p1, p2, tau),
          from_axis_and_length(p3, p2, tau), from_axis_and_length(p3, p4, tau),
          from_axis_and_length(disc_point(-1, 0), disc_point(1, 0), tau)};
}

}  // namespace testsupport
