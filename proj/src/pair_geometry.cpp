#include "hypsemi/pair_geometry.hpp"

#include <cmath>
#include <limits>

#include "hypsemi/error.hpp"

namespace hypsemi {

namespace {

double bracket(const BoundaryPoint& p, const BoundaryPoint& q) {
  return p.x() * q.y() - p.y() * q.x();
}

void require_nondegenerate(double c) {
  if (std::isinf(c) || std::fabs(c) < kCrossRatioTolerance ||
      std::fabs(c - 1.0) < kCrossRatioTolerance ||
      std::fabs(1.0 / c) < kCrossRatioTolerance) {
    throw Error(ErrorKind::kDegenerateCrossRatio,
                "cross ratio is 0, 1 or infinity");
  }
}

}  // namespace

bool CrossRatioValue::is_infinite() const {
  return den == 0.0 || std::fabs(den) < kCrossRatioTolerance * std::fabs(num);
}

double CrossRatioValue::value() const {
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

CrossRatioValue cross_ratio_points(const BoundaryPoint& a1,
                                   const BoundaryPoint& b1,
                                   const BoundaryPoint& a2,
                                   const BoundaryPoint& b2) {
  return {bracket(a1, a2) * bracket(b1, b2), bracket(a1, b2) * bracket(b1, a2)};
}

CrossRatioValue cross_ratio(const MoebiusMap& f, const MoebiusMap& g) {
  const Hyperbolic hf = require_hyperbolic(f);
  const Hyperbolic hg = require_hyperbolic(g);
  return cross_ratio_points(hf.alpha, hf.beta, hg.alpha, hg.beta);
}

const char* configuration_name(const Configuration& c) {
  switch (c.index()) {
    case 0: return "crossing";
    case 1: return "disjoint";
    case 2: return "shared-alpha";
    case 3: return "shared-beta";
    case 4: return "alpha-meets-beta";
    default: return "parabolic-degenerate";
  }
}

Configuration configuration_from_cr(double c) {
  if (std::isinf(c) || std::fabs(1.0 / c) < kCrossRatioTolerance) {
    return AlphaMeetsBeta{};
  }
  if (std::fabs(c) < kCrossRatioTolerance) return SharedAlpha{};
  if (std::fabs(c - 1.0) < kCrossRatioTolerance) return ParabolicDegenerate{};
  if (c < 0.0) return Crossing{2.0 * std::atan(std::sqrt(-c))};
  return Disjoint{distance_from_cr(c), c < 1.0};
}

PairGeometry configuration(const MoebiusMap& f, const MoebiusMap& g) {
  const Hyperbolic hf = require_hyperbolic(f);
  const Hyperbolic hg = require_hyperbolic(g);
  const CrossRatioValue cr =
      cross_ratio_points(hf.alpha, hf.beta, hg.alpha, hg.beta);
  if (cr.is_infinite()) return {cr, AlphaMeetsBeta{}};
  Configuration conf = configuration_from_cr(cr.value());
  if (std::holds_alternative<SharedAlpha>(conf) &&
      !same_point(hf.alpha, hg.alpha) && same_point(hf.beta, hg.beta)) {
    conf = SharedBeta{};
  }
  return {cr, conf};
}

double crossing_angle(const MoebiusMap& f, const MoebiusMap& g) {
  const double c = cross_ratio(f, g).value();
  require_nondegenerate(c);
  if (c > 0.0) throw Error(ErrorKind::kAxesDoNotCross, "axes are disjoint");
  return 2.0 * std::atan(std::sqrt(-c));
}

std::pair<CrossRatioValue, CrossRatioValue> inverse_flip_identity_check(
    const MoebiusMap& f, const MoebiusMap& g) {
  const CrossRatioValue c = cross_ratio(f, g);
  require_nondegenerate(c.value());
  if (c.value() < 0.0) throw Error(ErrorKind::kAxesCross, "axes cross");
  return {c, cross_ratio(inverse(f), g)};
}

double distance_from_cr(double c) {
  require_nondegenerate(c);
  if (c < 0.0) throw Error(ErrorKind::kAxesCross, "axes cross");
  const double s = std::sqrt(c);
  return std::log((s + 1.0) / std::fabs(s - 1.0));
}

double axes_distance_from_cr(const MoebiusMap& f, const MoebiusMap& g) {
  return distance_from_cr(cross_ratio(f, g).value());
}

CommonPerpendicular common_perpendicular(const Geodesic& l1,
                                         const Geodesic& l2) {
  // Move l1 to the imaginary axis; l2 becomes the half-circle on (u, v).
  const MoebiusMap m = axis_frame(l1.from, l1.to);
  const MoebiusMap mi = inverse(m);
  const BoundaryPoint p = apply_boundary(mi, l2.from);
  const BoundaryPoint q = apply_boundary(mi, l2.to);
  const BoundaryPoint zero = BoundaryPoint::from_real(0.0);
  const BoundaryPoint inf = BoundaryPoint::infinity();
  if (same_point(p, zero) || same_point(p, inf) || same_point(q, zero) ||
      same_point(q, inf)) {
    throw Error(ErrorKind::kSharedEndpoint, "geodesics share an endpoint");
  }
  const double u = p.real(), v = q.real();
  if (u * v < 0.0) throw Error(ErrorKind::kAxesCross, "geodesics cross");

  // |z| = sqrt(uv) is orthogonal to both; it meets the second circle where
  // x = 2uv/(u + v).
  const double r = std::sqrt(u * v);
  const double x = 2.0 * u * v / (u + v);
  const double y = std::sqrt(std::max(0.0, (r - x) * (r + x)));
  const PlanePoint f1 = apply_interior(m, PlanePoint(0.0, r));
  const PlanePoint f2 = apply_interior(m, PlanePoint(x, y));
  const BoundaryPoint near_end = BoundaryPoint::from_real(u > 0.0 ? -r : r);
  const BoundaryPoint far_end = BoundaryPoint::from_real(u > 0.0 ? r : -r);
  const Geodesic line(apply_boundary(m, near_end), apply_boundary(m, far_end));
  // Distance along |z| = r between the two feet: log of the ratio of
  // cot(phi/2) at each point, phi the polar angle.
  const double phi2 = std::atan2(y, x);
  const double d = std::fabs(std::log(std::tan(0.5 * phi2)));
  return {line, f1, f2, d};
}

}  // namespace hypsemi
