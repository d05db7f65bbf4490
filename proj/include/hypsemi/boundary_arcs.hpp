#pragma once

#include <optional>
#include <vector>

#include "hypsemi/moebius.hpp"

namespace hypsemi {

// Default angular clearance (radians) required of a certificate.
inline constexpr double kDefaultMargin = 1e-7;

/// Open arc of the boundary circle swept counterclockwise, in disc angle, from
/// start to end. Never empty and never the full circle.
class BoundaryArc {
 public:
  BoundaryArc(BoundaryPoint start, BoundaryPoint end);

  const BoundaryPoint& start() const { return start_; }
  const BoundaryPoint& end() const { return end_; }
  double start_angle() const { return start_angle_; }
  /// Counterclockwise angular length in (0, 2pi).
  double length() const { return length_; }
  BoundaryPoint midpoint() const;

 private:
  BoundaryPoint start_;
  BoundaryPoint end_;
  double start_angle_;
  double length_;
};

bool contains(const BoundaryArc& arc, const BoundaryPoint& p);
/// True when closure(inner) lies in closure(outer).
bool contains_arc(const BoundaryArc& outer, const BoundaryArc& inner,
                  double tolerance = 1e-12);
BoundaryArc complement(const BoundaryArc& arc);
BoundaryArc arc_image(const MoebiusMap& f, const BoundaryArc& arc);

/// Finite union of arcs with pairwise disjoint closures, sorted by start
/// angle.
class ArcUnion {
 public:
  ArcUnion() = default;
  /// Throws ArcOverlap when two closures meet.
  explicit ArcUnion(std::vector<BoundaryArc> arcs);

  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool contains(const BoundaryPoint& p) const;

 private:
  std::vector<BoundaryArc> arcs_;
};

/// closure(inner) inside outer with clearance >= margin at every endpoint.
/// With margin 0 a single shared endpoint is tolerated, so (2, inf) sits
/// inside (1, inf) but (1, inf) does not sit inside itself.
bool strictly_inside(const ArcUnion& inner, const ArcUnion& outer,
                     double margin);

/// f(closure(arc)) inside target with clearance >= margin. Works for images
/// narrower than the angle resolution, where arc_image would be degenerate.
bool image_inside(const MoebiusMap& f, const BoundaryArc& arc,
                  const ArcUnion& target, double margin);

/// Smallest endpoint clearance of the image of union under f inside union;
/// negative when some image arc escapes.
double schottky_clearance(const MoebiusMap& f, const ArcUnion& u);

/// Every generator maps every arc of u strictly inside u.
bool verify_schottky(const std::vector<MoebiusMap>& generators,
                     const ArcUnion& u, double margin = kDefaultMargin);

/// Whether the circle splits into two complementary arcs, one holding every
/// alpha and the other every beta. False when some alpha equals some beta.
bool can_partition_rank_one(const std::vector<BoundaryPoint>& alphas,
                            const std::vector<BoundaryPoint>& betas);

/// Candidate single interval holding every alpha and avoiding every beta.
/// Points that are both an alpha and a beta may serve as endpoints; other
/// endpoints sit at the middle of the gaps between the two blocks.
std::optional<BoundaryArc> rank_one_separator(
    const std::vector<BoundaryPoint>& alphas,
    const std::vector<BoundaryPoint>& betas);

}  // namespace hypsemi
