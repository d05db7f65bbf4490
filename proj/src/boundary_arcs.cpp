#include "hypsemi/boundary_arcs.hpp"

#include <algorithm>
#include <cmath>

#include "hypsemi/error.hpp"

namespace hypsemi {

namespace {

// Arc in angle coordinates. Unlike BoundaryArc it may have zero length, which
// happens when an image arc is narrower than the angle resolution.
struct Span {
  double start;
  double length;
  double end;
};

Span span_of(const BoundaryArc& arc) {
  return {arc.start_angle(), arc.length(), arc.end().disc_angle()};
}

double signed_offset(double a) {
  a = wrap_angle(a);
  return a > kPi ? a - kTwoPi : a;
}

// Image of an arc. Endpoints are mapped and orientation kept. Rounding can
// flip a tiny image into its complement (or the reverse), so membership of the
// point opposite f(start) is decided on the preimage side, where it is well
// conditioned. An unresolvable flip gives the whole circle.
Span image_span(const MoebiusMap& f, const BoundaryArc& arc) {
  const double s = apply_boundary(f, arc.start()).disc_angle();
  const double e = apply_boundary(f, arc.end()).disc_angle();
  const double m = apply_boundary(f, arc.midpoint()).disc_angle();
  const double len = wrap_angle(e - s);
  const BoundaryPoint q = BoundaryPoint::from_disc_angle(s + kPi);
  const bool q_in_image = contains(arc, apply_boundary(inverse(f), q));
  const bool q_in_span = len > kPi;
  if (q_in_image == q_in_span) return {s, len, e};
  if (q_in_image) return {s, kTwoPi, s};
  const double oe = signed_offset(e - s);
  const double om = signed_offset(m - s);
  const double lo = std::min({0.0, oe, om});
  const double hi = std::max({0.0, oe, om});
  return {wrap_angle(s + lo), hi - lo, wrap_angle(s + hi)};
}

// Clearances of inner inside outer at the start and end sides; negative when
// inner pokes out.
std::pair<double, double> clearances(const Span& inner, const Span& outer) {
  double cs = wrap_angle(inner.start - outer.start);
  if (cs > outer.length) cs -= kTwoPi;
  double ce = wrap_angle(outer.end - inner.end);
  if (ce > outer.length) ce -= kTwoPi;
  // An inner arc that starts inside but wraps past the far end can land its
  // end point back inside outer; catch it through the lengths.
  const double room = outer.length - cs - inner.length;
  if (cs >= 0.0 && room < -1e-12) ce = std::min(ce, room);
  return {cs, ce};
}

bool span_inside(const Span& inner, const Span& outer, double margin) {
  const auto [cs, ce] = clearances(inner, outer);
  if (margin > 0.0) return cs >= margin && ce >= margin;
  return cs >= 0.0 && ce >= 0.0 && (cs > 0.0 || ce > 0.0);
}

bool span_inside_union(const Span& inner, const ArcUnion& outer,
                       double margin) {
  for (const BoundaryArc& arc : outer.arcs()) {
    if (span_inside(inner, span_of(arc), margin)) return true;
  }
  return false;
}

}  // namespace

BoundaryArc::BoundaryArc(BoundaryPoint start, BoundaryPoint end)
    : start_(start), end_(end), start_angle_(start.disc_angle()) {
  length_ = wrap_angle(end.disc_angle() - start_angle_);
  if (length_ == 0.0) {
    throw Error(ErrorKind::kInvalidArc, "arc endpoints coincide");
  }
}

BoundaryPoint BoundaryArc::midpoint() const {
  return BoundaryPoint::from_disc_angle(start_angle_ + 0.5 * length_);
}

bool contains(const BoundaryArc& arc, const BoundaryPoint& p) {
  const double off = wrap_angle(p.disc_angle() - arc.start_angle());
  return off > 0.0 && off < arc.length();
}

bool contains_arc(const BoundaryArc& outer, const BoundaryArc& inner,
                  double tolerance) {
  double off = wrap_angle(inner.start_angle() - outer.start_angle());
  if (off > kTwoPi - tolerance) off -= kTwoPi;
  return off >= -tolerance &&
         off + inner.length() <= outer.length() + tolerance;
}

BoundaryArc complement(const BoundaryArc& arc) {
  return BoundaryArc(arc.end(), arc.start());
}

BoundaryArc arc_image(const MoebiusMap& f, const BoundaryArc& arc) {
  return BoundaryArc(apply_boundary(f, arc.start()),
                     apply_boundary(f, arc.end()));
}

ArcUnion::ArcUnion(std::vector<BoundaryArc> arcs) : arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end(),
            [](const BoundaryArc& x, const BoundaryArc& y) {
              return x.start_angle() < y.start_angle();
            });
  if (arcs_.size() < 2) return;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const BoundaryArc& cur = arcs_[i];
    const BoundaryArc& next = arcs_[(i + 1) % arcs_.size()];
    double off = next.start_angle() - cur.start_angle();
    if (i + 1 == arcs_.size()) off += kTwoPi;
    if (!(off > cur.length())) {
      throw Error(ErrorKind::kArcOverlap, "arc closures intersect");
    }
  }
}

bool ArcUnion::contains(const BoundaryPoint& p) const {
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const BoundaryArc& a) {
    return hypsemi::contains(a, p);
  });
}

bool strictly_inside(const ArcUnion& inner, const ArcUnion& outer,
                     double margin) {
  return std::all_of(inner.arcs().begin(), inner.arcs().end(),
                     [&](const BoundaryArc& arc) {
                       return span_inside_union(span_of(arc), outer, margin);
                     });
}

bool image_inside(const MoebiusMap& f, const BoundaryArc& arc,
                  const ArcUnion& target, double margin) {
  return span_inside_union(image_span(f, arc), target, margin);
}

double schottky_clearance(const MoebiusMap& f, const ArcUnion& u) {
  double worst = kTwoPi;
  for (const BoundaryArc& arc : u.arcs()) {
    const Span img = image_span(f, arc);
    double best = -kTwoPi;
    for (const BoundaryArc& target : u.arcs()) {
      const auto [cs, ce] = clearances(img, span_of(target));
      best = std::max(best, std::min(cs, ce));
    }
    worst = std::min(worst, best);
  }
  return worst;
}

bool verify_schottky(const std::vector<MoebiusMap>& generators,
                     const ArcUnion& u, double margin) {
  if (generators.empty() || u.empty()) return false;
  for (const MoebiusMap& f : generators) {
    for (const BoundaryArc& arc : u.arcs()) {
      if (!image_inside(f, arc, u, margin)) return false;
    }
  }
  return true;
}

namespace {

enum Label : int { kAlpha = 1, kBeta = 2, kBoth = 3 };

struct Labelled {
  BoundaryPoint point;
  int label;
  double angle;
};

std::vector<Labelled> labelled_points(const std::vector<BoundaryPoint>& alphas,
                                      const std::vector<BoundaryPoint>& betas) {
  std::vector<Labelled> pts;
  auto add = [&](const BoundaryPoint& p, int label) {
    for (Labelled& q : pts) {
      if (same_point(q.point, p)) {
        q.label |= label;
        return;
      }
    }
    pts.push_back({p, label, p.disc_angle()});
  };
  for (const BoundaryPoint& p : alphas) add(p, kAlpha);
  for (const BoundaryPoint& p : betas) add(p, kBeta);
  std::sort(pts.begin(), pts.end(), [](const Labelled& x, const Labelled& y) {
    return x.angle < y.angle;
  });
  return pts;
}

BoundaryPoint gap_midpoint(const BoundaryPoint& p, const BoundaryPoint& q) {
  const double ap = p.disc_angle(), aq = q.disc_angle();
  if (!p.is_infinity() && !q.is_infinity() && ap < aq) {
    return BoundaryPoint::from_real(0.5 * (p.real() + q.real()));
  }
  return BoundaryPoint::from_disc_angle(ap + 0.5 * wrap_angle(aq - ap));
}

}  // namespace

bool can_partition_rank_one(const std::vector<BoundaryPoint>& alphas,
                            const std::vector<BoundaryPoint>& betas) {
  const std::vector<Labelled> pts = labelled_points(alphas, betas);
  int changes = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].label == kBoth) return false;
    if (pts[i].label != pts[(i + 1) % pts.size()].label) ++changes;
  }
  return changes <= 2;
}

std::optional<BoundaryArc> rank_one_separator(
    const std::vector<BoundaryPoint>& alphas,
    const std::vector<BoundaryPoint>& betas) {
  const std::vector<Labelled> pts = labelled_points(alphas, betas);
  const std::size_t n = pts.size();
  // Rotate so the sequence opens with the first point of the alpha block.
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i].label == kAlpha && pts[(i + n - 1) % n].label != kAlpha) {
      first = i;
      break;
    }
  }
  if (first == n) return std::nullopt;
  std::vector<const Labelled*> seq;
  for (std::size_t k = 0; k < n; ++k) seq.push_back(&pts[(first + k) % n]);

  // Expected shape: A+ [Both] B+ [Both].
  std::size_t i = 0;
  while (i < n && seq[i]->label == kAlpha) ++i;
  const std::size_t last_alpha = i - 1;
  const Labelled* end_shared = nullptr;
  if (i < n && seq[i]->label == kBoth) end_shared = seq[i++];
  const std::size_t first_beta = i;
  while (i < n && seq[i]->label == kBeta) ++i;
  if (i == first_beta) return std::nullopt;
  const std::size_t last_beta = i - 1;
  const Labelled* start_shared = nullptr;
  if (i < n && seq[i]->label == kBoth) start_shared = seq[i++];
  if (i != n) return std::nullopt;

  const BoundaryPoint end =
      end_shared ? end_shared->point
                 : gap_midpoint(seq[last_alpha]->point, seq[first_beta]->point);
  const BoundaryPoint start =
      start_shared ? start_shared->point
                   : gap_midpoint(seq[last_beta]->point, seq[0]->point);
  return BoundaryArc(start, end);
}

}  // namespace hypsemi
