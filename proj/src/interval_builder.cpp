#include "hypsemi/interval_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypsemi/criteria.hpp"
#include "hypsemi/error.hpp"
#include "hypsemi/pair_geometry.hpp"

namespace hypsemi {

namespace {

MoebiusMap frame_of(const MoebiusMap& f) {
  const Hyperbolic h = require_hyperbolic(f);
  return axis_frame(h.beta, h.alpha);
}

BoundaryPoint R(double x) { return BoundaryPoint::from_real(x); }

SymmetricIntervalPair flipped(const SymmetricIntervalPair& p) {
  return {p.b, p.a, p.owner};
}

// Closures must be pairwise disjoint, except for the two a-arcs (b-arcs) of
// maps sharing the attracting (repelling) point. Each owner must map the
// complement of its b-arc inside its a-arc.
void verify_pair(const MoebiusMap& f, const MoebiusMap& g,
                 const SymmetricIntervalPair& pf,
                 const SymmetricIntervalPair& pg, double margin,
                 bool shared_alpha = false, bool shared_beta = false) {
  std::vector<std::vector<BoundaryArc>> groups = {
      {pf.a, pf.b}, {pg.a, pg.b}, {pf.a, pg.b}, {pg.a, pf.b}};
  if (!shared_alpha) groups.push_back({pf.a, pg.a});
  if (!shared_beta) groups.push_back({pf.b, pg.b});
  try {
    for (const auto& arcs : groups) ArcUnion check(arcs);
  } catch (const Error&) {
    throw Error(ErrorKind::kVerificationFailed,
                "pair intervals do not have disjoint closures");
  }
  if (!image_inside(f, complement(pf.b), ArcUnion({pf.a}), margin) ||
      !image_inside(g, complement(pg.b), ArcUnion({pg.a}), margin)) {
    throw Error(ErrorKind::kVerificationFailed,
                "pair intervals fail the mapping check");
  }
}

// Strict threshold comparison, forgiving the last bits of rounding in tau.
bool exceeds(double tau, double gate) { return tau > gate * (1.0 + 1e-12); }

SymmetricIntervalPair at_positions(const MoebiusMap& f, double s, double t,
                                   std::size_t owner) {
  return {symmetric_a_arc(f, s), symmetric_b_arc(f, t), owner};
}

// Normalizing map sending p to infinity.
MoebiusMap send_to_infinity(const BoundaryPoint& p) {
  if (p.is_infinity()) return MoebiusMap::identity();
  return MoebiusMap::normalize(0.0, -1.0, 1.0, -p.real());
}

std::string index_text(std::size_t i) { return std::to_string(i); }

}  // namespace

BoundaryArc symmetric_a_arc(const MoebiusMap& f, double s) {
  const MoebiusMap m = frame_of(f);
  const double r = std::exp(s);
  return BoundaryArc(apply_boundary(m, R(r)), apply_boundary(m, R(-r)));
}

BoundaryArc symmetric_b_arc(const MoebiusMap& f, double t) {
  const MoebiusMap m = frame_of(f);
  const double r = std::exp(t);
  return BoundaryArc(apply_boundary(m, R(-r)), apply_boundary(m, R(r)));
}

double perpendicular_position(const MoebiusMap& f, const BoundaryPoint& p) {
  const BoundaryPoint q = apply_boundary(inverse(frame_of(f)), p);
  if (q.is_infinity()) return std::numeric_limits<double>::infinity();
  return std::log(std::fabs(q.real()));
}

bool is_symmetric(const BoundaryArc& arc, const MoebiusMap& f,
                  double tolerance) {
  const Hyperbolic h = require_hyperbolic(f);
  const CrossRatioValue c =
      cross_ratio_points(arc.start(), arc.end(), h.alpha, h.beta);
  return !c.is_infinite() && std::fabs(c.value() + 1.0) < tolerance;
}

std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_disjoint_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                              std::size_t f_index, std::size_t g_index) {
  const CrossRatioValue cr = cross_ratio(f, g);
  const double c = cr.value();
  if (cr.is_infinite() || !(c > 1.0 + kCrossRatioTolerance)) {
    throw Error(ErrorKind::kAxesNotDisjoint,
                "cross ratio must exceed 1, got " + std::to_string(c));
  }
  const double length = std::log(c) + 1.5;
  const double tf = require_hyperbolic(f).tau;
  const double tg = require_hyperbolic(g).tau;
  if (!exceeds(tf, length) || !exceeds(tg, length)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "translation lengths must exceed log C + 3/2 = " +
                    std::to_string(length));
  }
  // Perpendiculars at distance length/2 on either side of the common
  // perpendicular. The arcs stay macroscopic however long tau is.
  const CommonPerpendicular cp = common_perpendicular(axis(f), axis(g));
  const MoebiusMap mf = frame_of(f), mg = frame_of(g);
  const double pf =
      std::log(std::abs(apply_interior(inverse(mf), cp.foot1).as_complex()));
  const double pg =
      std::log(std::abs(apply_interior(inverse(mg), cp.foot2).as_complex()));
  const double half = 0.5 * length;
  SymmetricIntervalPair a = at_positions(f, pf + half, pf - half, f_index);
  SymmetricIntervalPair b = at_positions(g, pg + half, pg - half, g_index);
  verify_pair(f, g, a, b, kDefaultMargin);
  return {a, b};
}

std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_crossing_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                              std::size_t f_index, std::size_t g_index) {
  const CrossRatioValue cr = cross_ratio(f, g);
  if (cr.is_infinite() || !(cr.value() < -kCrossRatioTolerance)) {
    throw Error(ErrorKind::kAxesDoNotCross, "axes do not cross");
  }
  const double c = cr.value();
  const double theta = 2.0 * std::atan(std::sqrt(-c));
  const double tf = require_hyperbolic(f).tau;
  const double tg = require_hyperbolic(g).tau;
  const double gate = std::fabs(std::log(-c)) + 1.5;
  if (!exceeds(tf, gate) || !exceeds(tg, gate)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "translation lengths must exceed |log|C|| + 3/2 = " +
                    std::to_string(gate));
  }
  // Seen from the crossing point, the perpendicular at distance s subtends a
  // half-angle w with cos w = tanh s. Arcs around the four endpoints are
  // disjoint iff w_f + w_g < mu, and the mapping needs 2s < tau.
  const double mu = std::min(theta, kPi - theta);
  const double wf_min = std::acos(std::tanh(0.5 * tf));
  const double wg_min = std::acos(std::tanh(0.5 * tg));
  if (!(wf_min + wg_min < mu)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "translation lengths too short for disjoint symmetric arcs "
                "at crossing angle " +
                    std::to_string(theta));
  }
  double wf = mu / 3.0, wg = mu / 3.0;
  if (!(wf_min < mu / 3.0 && wg_min < mu / 3.0)) {
    const double slack = mu - wf_min - wg_min;
    wf = wf_min + slack / 3.0;
    wg = wg_min + slack / 3.0;
  }
  const double sf = std::atanh(std::cos(wf));
  const double sg = std::atanh(std::cos(wg));

  // Position of the crossing point along each axis: in the frame of f the
  // axis of g is the half-circle on (u, v) with uv < 0, meeting the
  // imaginary axis at i sqrt(-uv).
  const Hyperbolic hf = require_hyperbolic(f);
  const Hyperbolic hg = require_hyperbolic(g);
  auto crossing_position = [](const MoebiusMap& owner, const Hyperbolic& other) {
    const MoebiusMap mi = inverse(frame_of(owner));
    const double u = apply_boundary(mi, other.alpha).real();
    const double v = apply_boundary(mi, other.beta).real();
    return 0.5 * std::log(-u * v);
  };
  const double cf = crossing_position(f, hg);
  const double cg = crossing_position(g, hf);
  SymmetricIntervalPair a = at_positions(f, cf + sf, cf - sf, f_index);
  SymmetricIntervalPair b = at_positions(g, cg + sg, cg - sg, g_index);
  verify_pair(f, g, a, b, kDefaultMargin);
  return {a, b};
}

std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_shared_alpha_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                                  std::size_t f_index, std::size_t g_index) {
  const Hyperbolic hf = require_hyperbolic(f);
  const Hyperbolic hg = require_hyperbolic(g);
  if (!same_point(hf.alpha, hg.alpha)) {
    throw Error(ErrorKind::kNoCommonAlpha, "attracting points differ");
  }
  if (same_point(hf.beta, hg.beta)) {
    throw Error(ErrorKind::kCoincidentEndpoints, "axes coincide");
  }
  const double gate = std::log(6.0);
  if (!exceeds(hf.tau, gate) || !exceeds(hg.tau, gate)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "translation lengths must exceed log 6");
  }
  // With alpha at infinity each map is z -> lambda (z - x) + x. Intervals of
  // radius D/4 around x and the complement of radius 3D/2 around x work for
  // lambda > 6, D the distance between the two repelling points.
  const MoebiusMap n = send_to_infinity(hf.alpha);
  const MoebiusMap ni = inverse(n);
  const double xf = apply_boundary(n, hf.beta).real();
  const double xg = apply_boundary(n, hg.beta).real();
  const double dd = std::fabs(xf - xg);
  auto build = [&](double x, std::size_t owner) {
    return SymmetricIntervalPair{
        BoundaryArc(apply_boundary(ni, R(x + 1.5 * dd)),
                    apply_boundary(ni, R(x - 1.5 * dd))),
        BoundaryArc(apply_boundary(ni, R(x - 0.25 * dd)),
                    apply_boundary(ni, R(x + 0.25 * dd))),
        owner};
  };
  SymmetricIntervalPair a = build(xf, f_index);
  SymmetricIntervalPair b = build(xg, g_index);
  verify_pair(f, g, a, b, kDefaultMargin, true, false);
  return {a, b};
}

SharedIntervals build_shared_alpha_intervals(
    const std::vector<MoebiusMap>& fs) {
  if (fs.empty()) {
    throw Error(ErrorKind::kPreconditionViolated, "no generators");
  }
  std::vector<Hyperbolic> hs;
  for (const MoebiusMap& f : fs) hs.push_back(require_hyperbolic(f));
  for (const Hyperbolic& h : hs) {
    if (!same_point(h.alpha, hs.front().alpha)) {
      throw Error(ErrorKind::kNoCommonAlpha,
                  "generators do not share the attracting point");
    }
    if (!exceeds(h.tau, std::log(5.0))) {
      throw Error(ErrorKind::kThresholdNotMet,
                  "translation lengths must exceed log 5");
    }
  }
  // Common alpha to infinity, then the repelling points into [0, 1].
  const MoebiusMap n = send_to_infinity(hs.front().alpha);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Hyperbolic& h : hs) {
    const double x = apply_boundary(n, h.beta).real();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double scale = hi - lo > 1e-12 ? hi - lo : 1.0;
  const MoebiusMap affine = MoebiusMap::normalize(1.0, -lo, 0.0, scale);
  const MoebiusMap conj = inverse(compose(affine, n));
  SharedIntervals out{
      BoundaryArc(apply_boundary(conj, R(2.5)), apply_boundary(conj, R(-1.5))),
      BoundaryArc(apply_boundary(conj, R(-0.5)), apply_boundary(conj, R(1.5))),
      conj};
  const ArcUnion target({out.a});
  for (const MoebiusMap& f : fs) {
    if (!image_inside(f, complement(out.b), target, kDefaultMargin)) {
      throw Error(ErrorKind::kVerificationFailed,
                  "shared-point intervals fail the mapping check");
    }
  }
  return out;
}

SharedIntervals build_shared_beta_intervals(const std::vector<MoebiusMap>& fs) {
  std::vector<MoebiusMap> inverses;
  for (const MoebiusMap& f : fs) inverses.push_back(inverse(f));
  SharedIntervals r = build_shared_alpha_intervals(inverses);
  return {r.b, r.a, r.conjugator};
}

namespace {

struct Candidate {
  double s;
  double t;
  std::size_t partner;
};

struct PairBuild {
  SymmetricIntervalPair first;
  SymmetricIntervalPair second;
  bool shared;
};

// Symmetric interval pairs for generators i and j chosen by configuration.
std::optional<PairBuild> build_for_pair(const std::vector<MoebiusMap>& fs,
                                        const std::vector<Hyperbolic>& hs,
                                        std::size_t i, std::size_t j) {
  const MoebiusMap& f = fs[i];
  const MoebiusMap& g = fs[j];
  const bool same_alpha = same_point(hs[i].alpha, hs[j].alpha);
  const bool same_beta = same_point(hs[i].beta, hs[j].beta);
  if (same_alpha && same_beta) return std::nullopt;
  if (same_alpha) {
    auto [a, b] = build_shared_alpha_pair_intervals(f, g, i, j);
    return PairBuild{a, b, true};
  }
  if (same_beta) {
    auto [a, b] =
        build_shared_alpha_pair_intervals(inverse(f), inverse(g), i, j);
    return PairBuild{flipped(a), flipped(b), true};
  }
  const CrossRatioValue cr = cross_ratio(f, g);
  if (cr.is_infinite()) {
    throw Error(ErrorKind::kPreconditionViolated,
                "attracting point of one generator is the repelling point of "
                "another (generators " +
                    index_text(i) + ", " + index_text(j) + ")");
  }
  const double c = cr.value();
  if (c < 0.0) {
    auto [a, b] = build_crossing_pair_intervals(f, g, i, j);
    return PairBuild{a, b, false};
  }
  if (c > 1.0) {
    auto [a, b] = build_disjoint_pair_intervals(f, g, i, j);
    return PairBuild{a, b, false};
  }
  auto [a, b] = build_disjoint_pair_intervals(inverse(f), g, i, j);
  return PairBuild{flipped(a), b, false};
}

// Smallest arc around p containing every arc in the list (all contain p).
BoundaryArc hull_around(const BoundaryPoint& p,
                        const std::vector<BoundaryArc>& arcs) {
  const double ap = p.disc_angle();
  const BoundaryArc* left = &arcs.front();
  const BoundaryArc* right = &arcs.front();
  double best_left = -1.0, best_right = -1.0;
  for (const BoundaryArc& arc : arcs) {
    const double l = wrap_angle(ap - arc.start_angle());
    const double r = wrap_angle(arc.end().disc_angle() - ap);
    if (l > best_left) {
      best_left = l;
      left = &arc;
    }
    if (r > best_right) {
      best_right = r;
      right = &arc;
    }
  }
  if (best_left + best_right >= kTwoPi) {
    throw Error(ErrorKind::kVerificationFailed,
                "interval union around an attracting point covers the circle");
  }
  return BoundaryArc(left->start(), right->end());
}

ArcUnion make_union(const std::vector<BoundaryArc>& arcs) {
  try {
    return ArcUnion(arcs);
  } catch (const Error&) {
    throw Error(ErrorKind::kVerificationFailed,
                "assembled intervals do not have disjoint closures");
  }
}

// Joins neighbouring components whose gap holds no repelling point, keeping a
// join only when the result still verifies.
ArcUnion merge_components(const std::vector<MoebiusMap>& fs,
                          const std::vector<Hyperbolic>& hs, ArcUnion u,
                          double margin) {
  bool changed = true;
  while (changed && u.size() > 1) {
    changed = false;
    const std::vector<BoundaryArc>& arcs = u.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::size_t j = (i + 1) % arcs.size();
      const BoundaryArc gap(arcs[i].end(), arcs[j].start());
      const bool blocked = std::any_of(hs.begin(), hs.end(), [&](const auto& h) {
        return contains(gap, h.beta) || same_point(h.beta, gap.start()) ||
               same_point(h.beta, gap.end());
      });
      if (blocked) continue;
      std::vector<BoundaryArc> next;
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        if (k != i && k != j) next.push_back(arcs[k]);
      }
      next.emplace_back(arcs[i].start(), arcs[j].end());
      try {
        ArcUnion candidate(next);
        if (verify_schottky(fs, candidate, margin)) {
          u = candidate;
          changed = true;
          break;
        }
      } catch (const Error&) {
      }
    }
  }
  return u;
}

}  // namespace

GlobalIntervalSystem assemble_global(const std::vector<MoebiusMap>& fs,
                                     const AssembleOptions& options) {
  const std::size_t n = fs.size();
  if (n == 0) throw Error(ErrorKind::kPreconditionViolated, "no generators");
  std::vector<Hyperbolic> hs;
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_hyperbolic(fs[k])) {
      throw Error(ErrorKind::kPreconditionViolated,
                  "generator " + index_text(k) + " is not hyperbolic");
    }
    hs.push_back(require_hyperbolic(fs[k]));
  }
  std::vector<BoundaryPoint> alphas, betas;
  for (const Hyperbolic& h : hs) {
    alphas.push_back(h.alpha);
    betas.push_back(h.beta);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (same_point(hs[i].alpha, hs[j].beta)) {
        throw Error(ErrorKind::kPreconditionViolated,
                    "alpha of generator " + index_text(i) +
                        " equals beta of generator " + index_text(j));
      }
    }
  }
  if (can_partition_rank_one(alphas, betas)) {
    throw Error(ErrorKind::kPreconditionViolated,
                "fixed points admit a rank-one partition");
  }
  if (options.require_upper_threshold) {
    const Thresholds th = compute_thresholds(fs);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(hs[k].tau > th.upper)) {
        throw Error(ErrorKind::kPreconditionViolated,
                    "translation length of generator " + index_text(k) +
                        " does not exceed the upper threshold " +
                        std::to_string(th.upper));
      }
    }
  }

  GlobalIntervalSystem sys;
  std::vector<std::vector<Candidate>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::optional<PairBuild> built;
      try {
        built = build_for_pair(fs, hs, i, j);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kPreconditionViolated) throw;
        throw Error(ErrorKind::kVerificationFailed,
                    "pair (" + index_text(i) + ", " + index_text(j) +
                        "): " + e.what());
      }
      if (!built) continue;
      const double si = perpendicular_position(fs[i], built->first.a.start());
      const double ti = perpendicular_position(fs[i], built->first.b.start());
      const double sj = perpendicular_position(fs[j], built->second.a.start());
      const double tj = perpendicular_position(fs[j], built->second.b.start());
      candidates[i].push_back({si, ti, j});
      candidates[j].push_back({sj, tj, i});
      if (!built->shared) {
        const double c = cross_ratio(fs[i], fs[j]).value();
        sys.pairs.push_back({i, j, c, std::max(si - ti, sj - tj),
                             c > 0.0 ? distance_from_cr(c) : 0.0});
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (candidates[k].empty()) {
      throw Error(ErrorKind::kVerificationFailed,
                  "generator " + index_text(k) + " has no interval partner");
    }
    const auto a_it = std::max_element(
        candidates[k].begin(), candidates[k].end(),
        [](const Candidate& x, const Candidate& y) { return x.s < y.s; });
    const auto b_it = std::min_element(
        candidates[k].begin(), candidates[k].end(),
        [](const Candidate& x, const Candidate& y) { return x.t < y.t; });
    const double d = a_it->s - b_it->t;
    if (!(hs[k].tau > d)) {
      throw Error(ErrorKind::kVerificationFailed,
                  "translation length of generator " + index_text(k) +
                      " does not exceed the innermost interval distance " +
                      std::to_string(d));
    }
    sys.generators.push_back({symmetric_a_arc(fs[k], a_it->s),
                              symmetric_b_arc(fs[k], b_it->t), a_it->s,
                              b_it->t, d, a_it->partner, b_it->partner});
  }

  // One component per distinct attracting point.
  std::vector<BoundaryArc> components;
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k]) continue;
    std::vector<BoundaryArc> group;
    for (std::size_t j = k; j < n; ++j) {
      if (!used[j] && same_point(hs[j].alpha, hs[k].alpha)) {
        used[j] = true;
        group.push_back(sys.generators[j].a);
      }
    }
    components.push_back(hull_around(hs[k].alpha, group));
  }
  ArcUnion u = make_union(components);
  for (const GeneratorIntervals& gi : sys.generators) {
    for (const BoundaryArc& arc : u.arcs()) {
      if (contains(arc, gi.b.start()) || contains(arc, gi.b.end()) ||
          contains(gi.b, arc.start())) {
        throw Error(ErrorKind::kVerificationFailed,
                    "an attracting interval meets a repelling interval");
      }
    }
  }
  if (!verify_schottky(fs, u, options.margin)) {
    throw Error(ErrorKind::kVerificationFailed,
                "assembled union fails the Schottky check at margin " +
                    std::to_string(options.margin));
  }
  sys.arcs = merge_components(fs, hs, u, options.margin);

  // Groups sharing a fixed point, with their common intervals on record.
  for (int pass = 0; pass < 2; ++pass) {
    const bool by_alpha = pass == 0;
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      if (seen[k]) continue;
      SharedGroup group{{}, by_alpha, std::nullopt};
      std::vector<MoebiusMap> members;
      for (std::size_t j = k; j < n; ++j) {
        const bool match = by_alpha ? same_point(hs[j].alpha, hs[k].alpha)
                                    : same_point(hs[j].beta, hs[k].beta);
        if (!seen[j] && match) {
          seen[j] = true;
          group.members.push_back(j);
          members.push_back(fs[j]);
        }
      }
      if (group.members.size() < 2) continue;
      try {
        group.intervals = by_alpha ? build_shared_alpha_intervals(members)
                                   : build_shared_beta_intervals(members);
      } catch (const Error&) {
      }
      sys.groups.push_back(group);
    }
  }

  double max_constant = 0.0, max_distance = 0.0;
  for (const PairConstant& p : sys.pairs) {
    max_constant = std::max(max_constant, p.constant);
    max_distance = std::max(max_distance, p.axes_distance);
  }
  sys.constant_m = 2.0 * max_constant + max_distance;
  sys.clearance = kTwoPi;
  for (const MoebiusMap& f : fs) {
    sys.clearance = std::min(sys.clearance, schottky_clearance(f, sys.arcs));
  }
  return sys;
}

}  // namespace hypsemi
