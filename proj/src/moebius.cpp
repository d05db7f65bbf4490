#include "hypsemi/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypsemi/error.hpp"

namespace hypsemi {

namespace {

// Canonical homogeneous representative: unit length, y > 0 or (y = 0, x > 0).
std::pair<double, double> canonical_pair(double x, double y) {
  const double n = std::hypot(x, y);
  x /= n;
  y /= n;
  if (y < 0.0 || (y == 0.0 && x < 0.0)) {
    x = -x;
    y = -y;
  }
  if (y == 0.0) x = 1.0;
  return {x + 0.0, y + 0.0};
}

}  // namespace

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

BoundaryPoint BoundaryPoint::from_homogeneous(double x, double y) {
  if (!(std::isfinite(x) && std::isfinite(y)) || (x == 0.0 && y == 0.0)) {
    throw Error(ErrorKind::kInvalidArc,
                "boundary point needs a finite nonzero homogeneous pair");
  }
  auto [cx, cy] = canonical_pair(x, y);
  return BoundaryPoint(cx, cy);
}

BoundaryPoint BoundaryPoint::from_real(double t) {
  if (std::isinf(t)) return infinity();
  return from_homogeneous(t, 1.0);
}

BoundaryPoint BoundaryPoint::from_disc_angle(double angle) {
  const double half = 0.5 * angle;
  return from_homogeneous(std::cos(half), -std::sin(half));
}

double BoundaryPoint::real() const {
  if (y_ == 0.0) return std::numeric_limits<double>::infinity();
  return x_ / y_;
}

double BoundaryPoint::disc_angle() const {
  // (x - iy)^2 / (x^2 + y^2) is the Cayley image of x/y.
  return wrap_angle(std::atan2(-2.0 * x_ * y_, (x_ - y_) * (x_ + y_)));
}

double angular_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  const double d = std::fabs(p.disc_angle() - q.disc_angle());
  return std::min(d, kTwoPi - d);
}

bool same_point(const BoundaryPoint& p, const BoundaryPoint& q,
                double tolerance) {
  return angular_distance(p, q) <= tolerance;
}

PlanePoint::PlanePoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorKind::kPreconditionViolated,
                "plane point must lie in the open upper half-plane");
  }
}

MoebiusMap MoebiusMap::normalize(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw Error(ErrorKind::kNonPositiveDeterminant,
                "matrix determinant must be positive");
  }
  const double s = 1.0 / std::sqrt(det);
  return from_unimodular(a * s, b * s, c * s, d * s);
}

MoebiusMap MoebiusMap::from_unimodular(double a, double b, double c,
                                       double d) {
  const double tr = a + d;
  bool flip = tr < 0.0;
  if (tr == 0.0) {
    const double first = a != 0.0 ? a : (b != 0.0 ? b : c);
    flip = first < 0.0;
  }
  if (flip) return MoebiusMap(-a + 0.0, -b + 0.0, -c + 0.0, -d + 0.0);
  return MoebiusMap(a + 0.0, b + 0.0, c + 0.0, d + 0.0);
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  return MoebiusMap::from_unimodular(f.a() * g.a() + f.b() * g.c(),
                                     f.a() * g.b() + f.b() * g.d(),
                                     f.c() * g.a() + f.d() * g.c(),
                                     f.c() * g.b() + f.d() * g.d());
}

MoebiusMap inverse(const MoebiusMap& f) {
  return MoebiusMap::from_unimodular(f.d(), -f.b(), -f.c(), f.a());
}

MoebiusMap conjugate(const MoebiusMap& f, const MoebiusMap& m) {
  return compose(m, compose(f, inverse(m)));
}

MoebiusMap power(const MoebiusMap& f, long k) {
  MoebiusMap base = k < 0 ? inverse(f) : f;
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k)
                          : static_cast<unsigned long>(k);
  MoebiusMap result = MoebiusMap::identity();
  while (n > 0) {
    if (n & 1UL) result = compose(result, base);
    base = compose(base, base);
    n >>= 1UL;
  }
  return result;
}

double identity_distance(const MoebiusMap& f) {
  const auto& m = f.entries();
  double plus = std::max({std::fabs(m[0] - 1.0), std::fabs(m[1]),
                          std::fabs(m[2]), std::fabs(m[3] - 1.0)});
  double minus = std::max({std::fabs(m[0] + 1.0), std::fabs(m[1]),
                           std::fabs(m[2]), std::fabs(m[3] + 1.0)});
  return std::min(plus, minus);
}

namespace {

// Pick the better conditioned of the two row-derived eigenvector candidates
// (b, lambda - a) and (lambda - d, c).
BoundaryPoint eigenvector(double x1, double y1, double x2, double y2) {
  if (std::hypot(x1, y1) >= std::hypot(x2, y2)) {
    return BoundaryPoint::from_homogeneous(x1, y1);
  }
  return BoundaryPoint::from_homogeneous(x2, y2);
}

// |f(v)| / |v| on the unit representative: the multiplier at a fixed point.
double multiplier(const MoebiusMap& f, const BoundaryPoint& p) {
  return std::hypot(f.a() * p.x() + f.b() * p.y(),
                    f.c() * p.x() + f.d() * p.y());
}

}  // namespace

MapKind kind_of(const Classification& c) {
  return static_cast<MapKind>(c.index());
}

const char* kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::kIdentity: return "identity";
    case MapKind::kElliptic: return "elliptic";
    case MapKind::kParabolic: return "parabolic";
    case MapKind::kHyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Classification classify(const MoebiusMap& f) {
  if (identity_distance(f) <= kIdentityTolerance) return Identity{};
  const double t = std::fabs(f.trace());
  if (std::fabs(t - 2.0) <= kTraceTolerance) {
    // Parabolic: the double root of c z^2 + (d - a) z - b = 0.
    const double x1 = f.b(), y1 = 1.0 - f.a();
    const double x2 = 1.0 - f.d(), y2 = f.c();
    if (std::hypot(x1, y1) >= std::hypot(x2, y2)) {
      return Parabolic{BoundaryPoint::from_homogeneous(x1, y1)};
    }
    return Parabolic{BoundaryPoint::from_homogeneous(x2, y2)};
  }
  if (t < 2.0) return Elliptic{2.0 * std::acos(0.5 * t)};

  // Eigenvalues are (a + d)/2 +- s. With u = (d - a)/2 the shifts
  // lambda - a = u +- s and lambda - d = -u +- s satisfy
  // (u + s)(u - s) = -bc, so the cancelling one is recovered from the product.
  const double u = 0.5 * (f.d() - f.a());
  const double s = 0.5 * std::sqrt(std::max(
      0.0, (f.a() - f.d()) * (f.a() - f.d()) + 4.0 * f.b() * f.c()));
  const double bc = f.b() * f.c();
  double up, um;  // u + s, u - s
  if (u >= 0.0) {
    up = u + s;
    um = -bc / up;
  } else {
    um = u - s;
    up = -bc / um;
  }
  // -u + s = -(u - s) and -u - s = -(u + s).
  BoundaryPoint p = eigenvector(f.b(), up, -um, f.c());
  BoundaryPoint q = eigenvector(f.b(), um, -up, f.c());
  if (multiplier(f, p) < multiplier(f, q)) std::swap(p, q);
  return Hyperbolic{p, q, 2.0 * std::acosh(0.5 * t)};
}

Hyperbolic require_hyperbolic(const MoebiusMap& f) {
  Classification c = classify(f);
  if (const auto* h = std::get_if<Hyperbolic>(&c)) return *h;
  throw Error(ErrorKind::kNotHyperbolic,
              std::string("map is ") + kind_name(kind_of(c)));
}

bool is_hyperbolic(const MoebiusMap& f) {
  return std::holds_alternative<Hyperbolic>(classify(f));
}

double translation_length_iterate_check(const MoebiusMap& f, int k) {
  require_hyperbolic(f);
  if (k < 1) {
    throw Error(ErrorKind::kPreconditionViolated, "iterate must be positive");
  }
  return require_hyperbolic(power(f, k)).tau;
}

BoundaryPoint apply_boundary(const MoebiusMap& f, const BoundaryPoint& p) {
  return BoundaryPoint::from_homogeneous(f.a() * p.x() + f.b() * p.y(),
                                         f.c() * p.x() + f.d() * p.y());
}

PlanePoint apply_interior(const MoebiusMap& f, const PlanePoint& z) {
  const std::complex<double> w = z.as_complex();
  return PlanePoint::from_complex((f.a() * w + f.b()) / (f.c() * w + f.d()));
}

double hyperbolic_distance(const PlanePoint& z, const PlanePoint& w) {
  const double chord = std::abs(z.as_complex() - w.as_complex());
  return 2.0 * std::asinh(0.5 * chord / std::sqrt(z.y * w.y));
}

Geodesic::Geodesic(BoundaryPoint from_, BoundaryPoint to_)
    : from(from_), to(to_) {
  if (same_point(from, to, 1e-14)) {
    throw Error(ErrorKind::kCoincidentEndpoints,
                "geodesic endpoints coincide");
  }
}

Geodesic axis(const MoebiusMap& f) {
  const Hyperbolic h = require_hyperbolic(f);
  return Geodesic(h.beta, h.alpha);
}

MoebiusMap axis_frame(const BoundaryPoint& beta, const BoundaryPoint& alpha) {
  double bx = beta.x(), by = beta.y();
  double det = alpha.x() * by - bx * alpha.y();
  if (std::fabs(det) < 1e-14) {
    throw Error(ErrorKind::kCoincidentEndpoints,
                "axis endpoints coincide");
  }
  if (det < 0.0) {
    bx = -bx;
    by = -by;
    det = -det;
  }
  return MoebiusMap::normalize(alpha.x(), bx, alpha.y(), by);
}

MoebiusMap from_axis_and_length(const BoundaryPoint& beta,
                                const BoundaryPoint& alpha, double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorKind::kNotHyperbolic,
                "translation length must be positive");
  }
  const MoebiusMap frame = axis_frame(beta, alpha);
  const double s = std::exp(0.5 * tau);
  const MoebiusMap dilation = MoebiusMap::from_unimodular(s, 0.0, 0.0, 1.0 / s);
  return conjugate(dilation, frame);
}

std::complex<double> cayley_to_disc(const PlanePoint& z) {
  const std::complex<double> w = z.as_complex();
  const std::complex<double> i(0.0, 1.0);
  return (w - i) / (w + i);
}

PlanePoint cayley_from_disc(std::complex<double> w) {
  const std::complex<double> i(0.0, 1.0);
  return PlanePoint::from_complex(i * (1.0 + w) / (1.0 - w));
}

std::complex<double> cayley_to_disc(const BoundaryPoint& p) {
  return std::polar(1.0, p.disc_angle());
}

BoundaryPoint cayley_from_disc_boundary(std::complex<double> w) {
  return BoundaryPoint::from_disc_angle(std::arg(w));
}

}  // namespace hypsemi
