#include "hypsemi/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypsemi/error.hpp"
#include "hypsemi/pair_geometry.hpp"

namespace hypsemi {

namespace {

constexpr double kCrossingBound = 0.2;
constexpr double kEllipticSlack = 1e-9;

PairEntry make_entry(std::size_t i, std::size_t j, double c) {
  PairEntry e{i, j, c, false, false, 0.0};
  if (!std::isfinite(c)) return e;
  e.disjoint = c > 1.0 + kCrossRatioTolerance;
  e.counted = std::fabs(c) > kCrossRatioTolerance &&
              std::fabs(c - 1.0) > kCrossRatioTolerance;
  if (e.disjoint) e.pair_lower = 0.2 * std::min(1.0, (c - 1.0) / (c + 3.0));
  return e;
}

Thresholds from_entries(std::vector<PairEntry> entries) {
  Thresholds t;
  double lower_min = 1.0;
  double upper_max = 0.0;
  for (const PairEntry& e : entries) {
    const double c = e.cross_ratio;
    if (e.disjoint) lower_min = std::min(lower_min, (c - 1.0) / (c + 3.0));
    if (e.counted) {
      upper_max = std::max(upper_max, std::fabs(std::log(std::fabs(c * (c - 1.0)))));
      t.has_upper = true;
    }
  }
  t.lower = 0.2 * lower_min;
  t.upper = 4.0 * upper_max + 23.0;
  t.pairs = std::move(entries);
  return t;
}

double disjoint_cr(const MoebiusMap& f, const MoebiusMap& g) {
  const CrossRatioValue cr = cross_ratio(f, g);
  const double c = cr.value();
  if (cr.is_infinite() || c < -kCrossRatioTolerance) {
    throw Error(ErrorKind::kAxesNotDisjoint, "axes are not disjoint");
  }
  if (!(c > 1.0 + kCrossRatioTolerance)) {
    throw Error(ErrorKind::kCrossRatioOutOfRange,
                "cross ratio must exceed 1, got " + std::to_string(c));
  }
  return c;
}

double trace_of(const MoebiusMap& f, long m, const MoebiusMap& g, long n) {
  return compose(power(f, m), power(g, n)).trace();
}

std::vector<double> taus_of(const std::vector<MoebiusMap>& fs) {
  std::vector<double> out;
  for (const MoebiusMap& f : fs) out.push_back(require_hyperbolic(f).tau);
  return out;
}

// Arc between the attracting points holding no repelling point; requires
// crossing axes.
BoundaryArc limit_arc(const Hyperbolic& hf, const Hyperbolic& hg) {
  const BoundaryArc forward(hf.alpha, hg.alpha);
  if (!contains(forward, hf.beta) && !contains(forward, hg.beta)) {
    return forward;
  }
  return BoundaryArc(hg.alpha, hf.alpha);
}

double crossing_theta(const MoebiusMap& f, const MoebiusMap& g) {
  const CrossRatioValue cr = cross_ratio(f, g);
  if (cr.is_infinite() || !(cr.value() < -kCrossRatioTolerance)) {
    throw Error(ErrorKind::kAxesDoNotCross, "axes do not cross");
  }
  return 2.0 * std::atan(std::sqrt(-cr.value()));
}

NotSemidiscrete disjoint_record(const MoebiusMap& f, const MoebiusMap& g,
                                std::size_t i, std::size_t j) {
  const EllipticWitness w = elliptic_witness_disjoint(f, g);
  NotSemidiscrete ns;
  ns.criterion = "disjoint-pair";
  ns.word = {{i, w.m}, {j, w.n}};
  ns.trace = w.trace;
  ns.generators = {i, j};
  ns.detail = "C = " + std::to_string(cross_ratio(f, g).value());
  return ns;
}

NotSemidiscrete triple_record(const MoebiusMap& f, const MoebiusMap& g,
                              const MoebiusMap& h, std::size_t i,
                              std::size_t j, std::size_t k) {
  const double theta = crossing_theta(f, g);
  const BoundaryArc arc = crossing_limit_interval(f, g);
  if (!contains(arc, require_hyperbolic(h).beta)) {
    throw Error(ErrorKind::kPreconditionViolated,
                "repelling point of the third generator is outside the "
                "limit interval");
  }
  const double tf = require_hyperbolic(f).tau;
  const double tg = require_hyperbolic(g).tau;
  const double bound =
      std::sinh(0.5 * tf) * std::sinh(0.5 * tg) * std::sin(theta);
  if (!(bound < std::cos(3.0 * kPi / 7.0))) {
    throw Error(ErrorKind::kPreconditionViolated,
                "discreteness bound not met");
  }
  NotSemidiscrete ns;
  ns.criterion = "crossing-triple";
  ns.generators = {i, j, k};
  ns.detail = "theta = " + std::to_string(theta) +
              ", sinh(tf/2) sinh(tg/2) sin(theta) = " + std::to_string(bound);
  return ns;
}

// First pair or triple, in index order, whose own criterion holds.
std::optional<NotSemidiscrete> scan_witness(const std::vector<MoebiusMap>& fs,
                                            const std::vector<Hyperbolic>& hs,
                                            const Thresholds& th) {
  for (const PairEntry& e : th.pairs) {
    if (!e.disjoint) continue;
    if (hs[e.i].tau < e.pair_lower && hs[e.j].tau < e.pair_lower) {
      return disjoint_record(fs[e.i], fs[e.j], e.i, e.j);
    }
  }
  for (const PairEntry& e : th.pairs) {
    if (!std::isfinite(e.cross_ratio) ||
        !(e.cross_ratio < -kCrossRatioTolerance)) {
      continue;
    }
    if (!(hs[e.i].tau < kCrossingBound && hs[e.j].tau < kCrossingBound)) {
      continue;
    }
    const BoundaryArc arc = limit_arc(hs[e.i], hs[e.j]);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (k == e.i || k == e.j || !contains(arc, hs[k].beta)) continue;
      try {
        return triple_record(fs[e.i], fs[e.j], fs[k], e.i, e.j, k);
      } catch (const Error&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Thresholds thresholds_from_table(const std::vector<double>& cross_ratios) {
  std::vector<PairEntry> entries;
  for (std::size_t k = 0; k < cross_ratios.size(); ++k) {
    entries.push_back(make_entry(k, k, cross_ratios[k]));
  }
  return from_entries(std::move(entries));
}

Thresholds compute_thresholds(const std::vector<MoebiusMap>& fs) {
  std::vector<PairEntry> entries;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const CrossRatioValue cr = cross_ratio(fs[i], fs[j]);
      entries.push_back(make_entry(
          i, j,
          cr.is_infinite() ? std::numeric_limits<double>::infinity()
                           : cr.value()));
    }
  }
  return from_entries(std::move(entries));
}

double h_function(double x, double y, double d) {
  return std::cosh(d) * std::sinh(x) * std::sinh(y) -
         std::cosh(x) * std::cosh(y);
}

HRegion make_hregion(double d) {
  if (!(d > 0.0)) {
    throw Error(ErrorKind::kPreconditionViolated, "distance must be positive");
  }
  const double s = std::sinh(0.5 * d);
  return {d, std::asinh(1.0 / (3.0 * s)), std::asinh(1.0 / (2.0 * s)),
          std::asinh(1.0 / s)};
}

std::pair<double, double> pair_trace_identity_check(const MoebiusMap& f,
                                                    const MoebiusMap& g) {
  const double c = disjoint_cr(f, g);
  const double d = distance_from_cr(c);
  const double lhs = 0.5 * std::fabs(compose(f, g).trace());
  const double rhs = std::fabs(h_function(0.5 * require_hyperbolic(f).tau,
                                          0.5 * require_hyperbolic(g).tau, d));
  return {lhs, rhs};
}

EllipticWitness elliptic_witness_disjoint(const MoebiusMap& f,
                                          const MoebiusMap& g) {
  const double d = distance_from_cr(disjoint_cr(f, g));
  const double tf = require_hyperbolic(f).tau;
  const double tg = require_hyperbolic(g).tau;
  const HRegion region = make_hregion(d);
  const long bound = std::max<long>(
      64, static_cast<long>(std::ceil(4.0 * region.b / std::min(tf, tg))));
  for (long total = 2; total <= 2 * bound; ++total) {
    for (long m = std::max(1L, total - bound); m <= std::min(bound, total - 1);
         ++m) {
      const long n = total - m;
      const double h = h_function(0.5 * m * tf, 0.5 * n * tg, d);
      if (!(h > -1.0 && h < -0.5)) continue;
      const double trace = trace_of(f, m, g, n);
      if (std::fabs(trace) < 2.0 - kEllipticSlack) return {m, n, trace};
    }
  }
  throw Error(ErrorKind::kSearchExhausted,
              "no elliptic product f^m g^n with m, n <= " +
                  std::to_string(bound));
}

EllipticWitness elliptic_witness_in_square(const MoebiusMap& f,
                                           const MoebiusMap& g) {
  const double d = distance_from_cr(disjoint_cr(f, g));
  const HRegion region = make_hregion(d);
  auto first_inside = [&](double tau) {
    const long k = static_cast<long>(std::floor(2.0 * region.a / tau)) + 1;
    if (!(0.5 * k * tau < region.b)) {
      throw Error(ErrorKind::kSearchExhausted,
                  "translation length too long for the square (a, b)");
    }
    return k;
  };
  const long m = first_inside(require_hyperbolic(f).tau);
  const long n = first_inside(require_hyperbolic(g).tau);
  const double trace = trace_of(f, m, g, n);
  if (!(std::fabs(trace) < 2.0 - kEllipticSlack)) {
    throw Error(ErrorKind::kSearchExhausted, "square witness is not elliptic");
  }
  return {m, n, trace};
}

const char* certificate_kind(const Certificate& c) {
  switch (c.index()) {
    case 0: return "NotSemidiscrete";
    case 1: return "SemidiscreteInverseFree";
    case 2: return "RankOneSchottky";
    default: return "Inconclusive";
  }
}

Certificate two_gen_disjoint_test(const MoebiusMap& f, const MoebiusMap& g) {
  const double c = disjoint_cr(f, g);
  const double tf = require_hyperbolic(f).tau;
  const double tg = require_hyperbolic(g).tau;
  const double lower = 0.2 * std::min(1.0, (c - 1.0) / (c + 3.0));
  if (tf < lower && tg < lower) return disjoint_record(f, g, 0, 1);
  const double upper = std::log(c) + 1.5;
  if (tf > upper && tg > upper) {
    AssembleOptions options;
    options.require_upper_threshold = false;
    return SemidiscreteInverseFree{assemble_global({f, g}, options)};
  }
  Inconclusive out;
  out.thresholds = compute_thresholds({f, g});
  out.taus = {tf, tg};
  out.reason = "translation lengths lie between " + std::to_string(lower) +
               " and " + std::to_string(upper);
  return out;
}

double crossing_cos_phi(double tau, double theta) {
  const double ch = std::cosh(tau), sh = std::sinh(tau), ct = std::cos(theta);
  return (sh + ch * ct) / (ch + sh * ct);
}

BoundaryArc crossing_limit_interval(const MoebiusMap& f, const MoebiusMap& g) {
  const double theta = crossing_theta(f, g);
  const Hyperbolic hf = require_hyperbolic(f);
  const Hyperbolic hg = require_hyperbolic(g);
  if (!(hf.tau < kCrossingBound && hg.tau < kCrossingBound)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "translation lengths must be below 1/5");
  }
  const double half = std::cos(0.5 * theta);
  if (!(crossing_cos_phi(hf.tau, theta) < half &&
        crossing_cos_phi(hg.tau, theta) < half)) {
    throw Error(ErrorKind::kThresholdNotMet,
                "images of the interval do not cover it");
  }
  return limit_arc(hf, hg);
}

Certificate triple_crossing_test(const MoebiusMap& f, const MoebiusMap& g,
                                 const MoebiusMap& h) {
  try {
    return triple_record(f, g, h, 0, 1, 2);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kPreconditionViolated) throw;
    throw Error(ErrorKind::kPreconditionViolated, e.what());
  }
}

Certificate certify(const std::vector<MoebiusMap>& fs,
                    const CertifyOptions& options) {
  if (fs.empty()) throw Error(ErrorKind::kPreconditionViolated, "no generators");
  std::vector<Hyperbolic> hs;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!is_hyperbolic(fs[k])) {
      throw Error(ErrorKind::kPreconditionViolated,
                  "generator " + std::to_string(k) + " is " +
                      kind_name(kind_of(classify(fs[k]))));
    }
    hs.push_back(require_hyperbolic(fs[k]));
  }
  std::vector<BoundaryPoint> alphas, betas;
  for (const Hyperbolic& h : hs) {
    alphas.push_back(h.alpha);
    betas.push_back(h.beta);
  }
  bool alpha_meets_beta = false;
  for (const BoundaryPoint& a : alphas) {
    for (const BoundaryPoint& b : betas) {
      alpha_meets_beta = alpha_meets_beta || same_point(a, b);
    }
  }

  if (const auto sep = rank_one_separator(alphas, betas)) {
    // A shared alpha = beta point sits on the boundary of the interval, so
    // only the tolerant check can pass there.
    const double margin = alpha_meets_beta ? 0.0 : options.margin;
    const ArcUnion u({*sep});
    if (verify_schottky(fs, u, margin)) {
      double clearance = kTwoPi;
      for (const MoebiusMap& f : fs) {
        clearance = std::min(clearance, schottky_clearance(f, u));
      }
      return RankOneSchottky{*sep, margin, clearance};
    }
  }
  if (alpha_meets_beta) {
    throw Error(ErrorKind::kPreconditionViolated,
                "an attracting point equals a repelling point");
  }

  const Thresholds th = compute_thresholds(fs);
  const std::vector<double> taus = taus_of(fs);
  const bool all_below = std::all_of(taus.begin(), taus.end(),
                                     [&](double t) { return t < th.lower; });
  const bool all_above = std::all_of(taus.begin(), taus.end(),
                                     [&](double t) { return t > th.upper; });

  if (all_above) {
    try {
      AssembleOptions ao;
      ao.margin = options.margin;
      return SemidiscreteInverseFree{assemble_global(fs, ao)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kVerificationFailed) throw;
      return Inconclusive{th, taus, std::string("assembly failed: ") + e.what()};
    }
  }
  if (auto ns = scan_witness(fs, hs, th)) {
    ns->sub_semigroup = !all_below;
    return *ns;
  }
  Inconclusive out{th, taus, ""};
  out.reason = all_below
                   ? "no disjoint pair or crossing triple found below the "
                     "lower threshold"
                   : "translation lengths are not all below " +
                         std::to_string(th.lower) + " or all above " +
                         std::to_string(th.upper);
  return out;
}

std::optional<ArcUnion> uniform_hyperbolicity(
    const std::vector<RawMatrix>& tuple) {
  if (tuple.empty()) {
    throw Error(ErrorKind::kInvalidMatrix, "empty tuple");
  }
  std::vector<MoebiusMap> fs;
  bool orientation_reversing = false;
  for (const RawMatrix& m : tuple) {
    // Entries of long products are large and ad - bc cancels, so the
    // tolerance scales with the entries and the map is taken as given.
    const double w = m[1] * m[2];
    const double det = std::fma(m[0], m[3], -w) + std::fma(-m[1], m[2], w);
    const double scale = std::max({std::fabs(m[0]), std::fabs(m[1]),
                                   std::fabs(m[2]), std::fabs(m[3]), 1.0});
    const double tol = 1e-9 * scale * scale;
    const bool plus = std::fabs(det - 1.0) <= tol;
    const bool minus = std::fabs(det + 1.0) <= tol;
    if (!std::isfinite(det) || !(plus || minus)) {
      throw Error(ErrorKind::kInvalidMatrix,
                  "determinant must be +1 or -1, got " + std::to_string(det));
    }
    if (!plus || (minus && std::fabs(det + 1.0) < std::fabs(det - 1.0))) {
      orientation_reversing = true;
      continue;
    }
    fs.push_back(MoebiusMap::from_unimodular(m[0], m[1], m[2], m[3]));
  }
  if (orientation_reversing) return std::nullopt;
  for (const MoebiusMap& f : fs) {
    if (!is_hyperbolic(f)) return std::nullopt;
  }
  Certificate c;
  try {
    c = certify(fs);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kPreconditionViolated) return std::nullopt;
    throw;
  }
  std::optional<ArcUnion> out;
  if (const auto* r = std::get_if<RankOneSchottky>(&c)) {
    out = ArcUnion({r->interval});
  } else if (const auto* s = std::get_if<SemidiscreteInverseFree>(&c)) {
    out = s->system.arcs;
  }
  if (out && !verify_schottky(fs, *out, 0.0)) return std::nullopt;
  return out;
}

}  // namespace hypsemi
