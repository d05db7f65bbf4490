#pragma once

#include <array>
#include <complex>
#include <variant>

namespace hypsemi {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance on ||a+d| - 2| below which a normalized map is not hyperbolic.
inline constexpr double kTraceTolerance = 1e-9;
// Max-entry distance to the identity below which a map is the identity.
inline constexpr double kIdentityTolerance = 1e-9;

/// A point of the extended real line, stored as a homogeneous pair (x : y)
/// representing x/y. The pair is kept on the upper unit half-circle so that
/// every point has exactly one representation and infinity is (1, 0).
class BoundaryPoint {
 public:
  static BoundaryPoint from_homogeneous(double x, double y);
  static BoundaryPoint from_real(double t);
  static BoundaryPoint infinity() { return BoundaryPoint(1.0, 0.0); }
  /// Inverse of disc_angle(): the point whose Cayley image is e^{i angle}.
  static BoundaryPoint from_disc_angle(double angle);

  double x() const { return x_; }
  double y() const { return y_; }
  bool is_infinity() const { return y_ == 0.0; }
  /// x/y, or +inf for the point at infinity.
  double real() const;
  /// Argument in [0, 2pi) of the image on the unit circle under
  /// z -> (z - i)/(z + i). Increasing real values run counterclockwise.
  double disc_angle() const;

 private:
  BoundaryPoint(double x, double y) : x_(x), y_(y) {}

  double x_;
  double y_;
};

/// Angle reduced to [0, 2pi).
double wrap_angle(double a);

/// Shortest angular distance between the disc images of two boundary points.
double angular_distance(const BoundaryPoint& p, const BoundaryPoint& q);
bool same_point(const BoundaryPoint& p, const BoundaryPoint& q,
                double tolerance = 1e-9);

/// Point of the upper half-plane.
struct PlanePoint {
  PlanePoint(double x_, double y_);
  static PlanePoint from_complex(std::complex<double> z) {
    return PlanePoint(z.real(), z.imag());
  }
  std::complex<double> as_complex() const { return {x, y}; }

  double x;
  double y;
};

/// z -> (az + b)/(cz + d) with ad - bc = 1 and a canonical sign: a + d > 0,
/// or a + d = 0 and the first nonzero of (a, b, c) positive.
class MoebiusMap {
 public:
  /// Scales an arbitrary real matrix with positive determinant to det 1.
  static MoebiusMap normalize(double a, double b, double c, double d);
  /// Wraps entries already known to have determinant 1 (products of
  /// normalized maps). Only the sign is canonicalized; the entries are not
  /// rescaled because for long products ad - bc cancels catastrophically.
  static MoebiusMap from_unimodular(double a, double b, double c, double d);
  static MoebiusMap identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }
  double trace() const { return m_[0] + m_[3]; }

 private:
  MoebiusMap(double a, double b, double c, double d) : m_{a, b, c, d} {}

  std::array<double, 4> m_;
};

/// f o g.
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
MoebiusMap inverse(const MoebiusMap& f);
/// m o f o m^{-1}.
MoebiusMap conjugate(const MoebiusMap& f, const MoebiusMap& m);
/// f^k for any integer k; negative powers iterate the inverse.
MoebiusMap power(const MoebiusMap& f, long k);
/// Max-entry distance of the normalized matrix to the identity, minimized over
/// the projective sign.
double identity_distance(const MoebiusMap& f);

struct Identity {};
struct Elliptic {
  double rotation;  // radians in (0, pi]
};
struct Parabolic {
  BoundaryPoint fixed;
};
struct Hyperbolic {
  BoundaryPoint alpha;  // attracting
  BoundaryPoint beta;   // repelling
  double tau;           // translation length
};
using Classification = std::variant<Identity, Elliptic, Parabolic, Hyperbolic>;

enum class MapKind { kIdentity, kElliptic, kParabolic, kHyperbolic };

MapKind kind_of(const Classification& c);
const char* kind_name(MapKind kind);
Classification classify(const MoebiusMap& f);
/// classify() narrowed to the hyperbolic case; throws NotHyperbolic.
Hyperbolic require_hyperbolic(const MoebiusMap& f);
bool is_hyperbolic(const MoebiusMap& f);

/// tau(f^k), computed from the matrix power.
double translation_length_iterate_check(const MoebiusMap& f, int k);

BoundaryPoint apply_boundary(const MoebiusMap& f, const BoundaryPoint& p);
PlanePoint apply_interior(const MoebiusMap& f, const PlanePoint& z);
double hyperbolic_distance(const PlanePoint& z, const PlanePoint& w);

/// Directed geodesic of the half-plane. For an axis, from = beta, to = alpha.
struct Geodesic {
  Geodesic(BoundaryPoint from_, BoundaryPoint to_);

  BoundaryPoint from;
  BoundaryPoint to;
};

Geodesic axis(const MoebiusMap& f);
/// Orientation-preserving map with 0 -> beta and infinity -> alpha built from
/// the unit homogeneous representatives of the two points.
MoebiusMap axis_frame(const BoundaryPoint& beta, const BoundaryPoint& alpha);
/// The hyperbolic map with repelling point beta, attracting point alpha and
/// translation length tau.
MoebiusMap from_axis_and_length(const BoundaryPoint& beta,
                                const BoundaryPoint& alpha, double tau);

std::complex<double> cayley_to_disc(const PlanePoint& z);
PlanePoint cayley_from_disc(std::complex<double> w);
/// Boundary version: the unit-circle point e^{i disc_angle}.
std::complex<double> cayley_to_disc(const BoundaryPoint& p);
BoundaryPoint cayley_from_disc_boundary(std::complex<double> w);

}  // namespace hypsemi
