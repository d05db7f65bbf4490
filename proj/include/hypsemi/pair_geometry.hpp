#pragma once

#include <variant>

#include "hypsemi/moebius.hpp"

namespace hypsemi {

// |C|, |C - 1| and |1/C| below this count as degenerate.
inline constexpr double kCrossRatioTolerance = 1e-9;

/// Projective real num/den; den == 0 is the point at infinity.
struct CrossRatioValue {
  double num;
  double den;

  bool is_infinite() const;
  /// num/den, or +inf.
  double value() const;
};

/// Cross ratio of the fixed-point quadruple written in homogeneous form:
/// [a1,a2][b1,b2] / ([a1,b2][b1,a2]) with [p,q] = p.x q.y - p.y q.x.
CrossRatioValue cross_ratio_points(const BoundaryPoint& a1,
                                   const BoundaryPoint& b1,
                                   const BoundaryPoint& a2,
                                   const BoundaryPoint& b2);
CrossRatioValue cross_ratio(const MoebiusMap& f, const MoebiusMap& g);

struct Crossing {
  double theta;  // angle at the crossing, in (0, pi)
};
struct Disjoint {
  double d;
  // Both axes point the same way along the common perpendicular (0 < C < 1).
  bool nested_attractors;
};
struct SharedAlpha {};
struct SharedBeta {};
struct AlphaMeetsBeta {};
struct ParabolicDegenerate {};

using Configuration = std::variant<Crossing, Disjoint, SharedAlpha, SharedBeta,
                                   AlphaMeetsBeta, ParabolicDegenerate>;

struct PairGeometry {
  CrossRatioValue cross_ratio;
  Configuration config;
};

const char* configuration_name(const Configuration& c);

PairGeometry configuration(const MoebiusMap& f, const MoebiusMap& g);
/// Decodes a bare cross ratio; shared endpoints are reported as SharedAlpha.
Configuration configuration_from_cr(double c);

/// theta with C = -tan^2(theta/2). Throws DegenerateCrossRatio or
/// AxesDoNotCross.
double crossing_angle(const MoebiusMap& f, const MoebiusMap& g);

/// (C(f, g), C(f^-1, g)) for disjoint axes.
std::pair<CrossRatioValue, CrossRatioValue> inverse_flip_identity_check(
    const MoebiusMap& f, const MoebiusMap& g);

struct CommonPerpendicular {
  Geodesic line;  // directed from the first geodesic to the second
  PlanePoint foot1;
  PlanePoint foot2;
  double d;
};

CommonPerpendicular common_perpendicular(const Geodesic& l1,
                                         const Geodesic& l2);

/// log((sqrt C + 1)/|sqrt C - 1|), the distance between disjoint axes.
double axes_distance_from_cr(const MoebiusMap& f, const MoebiusMap& g);
double distance_from_cr(double c);

}  // namespace hypsemi
