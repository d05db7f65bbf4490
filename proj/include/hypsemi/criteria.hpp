#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypsemi/boundary_arcs.hpp"
#include "hypsemi/interval_builder.hpp"
#include "hypsemi/moebius.hpp"

namespace hypsemi {

struct PairEntry {
  std::size_t i;
  std::size_t j;
  double cross_ratio;  // +inf when an attracting point meets a repelling one
  bool disjoint;       // C > 1, enters the lower bound
  bool counted;        // finite, C != 0 and C != 1, enters the upper bound
  double pair_lower;   // (1/5) min{(C-1)/(C+3), 1} for disjoint pairs
};

struct Thresholds {
  double lower = 0.2;
  double upper = 23.0;
  bool has_upper = false;  // false when no pair enters the upper bound
  std::vector<PairEntry> pairs;
};

/// Thresholds straight from a table of cross ratios (pairs indexed 0, 1, ...).
Thresholds thresholds_from_table(const std::vector<double>& cross_ratios);
Thresholds compute_thresholds(const std::vector<MoebiusMap>& fs);

double h_function(double x, double y, double d);

struct HRegion {
  double d;
  double a;        // h(a, a) = -7/9
  double b;        // h(b, b) = -1/2
  double b_prime;  // h(b', b') = 1
};
HRegion make_hregion(double d);

/// (|tr(f g)|/2, |h(tau(f)/2, tau(g)/2, d)|). Valid for C(f, g) > 1.
std::pair<double, double> pair_trace_identity_check(const MoebiusMap& f,
                                                    const MoebiusMap& g);

struct EllipticWitness {
  long m;
  long n;
  double trace;  // trace of f^m g^n
};

/// Smallest m + n (then smallest m) with h(m tau_f/2, n tau_g/2, d) in
/// (-1, -1/2), confirmed on the matrix product.
EllipticWitness elliptic_witness_disjoint(const MoebiusMap& f,
                                          const MoebiusMap& g);
/// The witness with both m tau_f/2 and n tau_g/2 in the square (a, b).
EllipticWitness elliptic_witness_in_square(const MoebiusMap& f,
                                           const MoebiusMap& g);

struct WitnessLetter {
  std::size_t generator;
  long exponent;
};

struct NotSemidiscrete {
  std::string criterion;  // "disjoint-pair" or "crossing-triple"
  std::vector<WitnessLetter> word;  // leftmost letter applied last
  std::optional<double> trace;
  std::vector<std::size_t> generators;
  /// The criterion was applied to the sub-semigroup on these generators
  /// rather than through the global lower threshold.
  bool sub_semigroup = false;
  std::string detail;
};

struct SemidiscreteInverseFree {
  GlobalIntervalSystem system;
};

struct RankOneSchottky {
  BoundaryArc interval;
  double margin;
  double clearance;
};

struct Inconclusive {
  Thresholds thresholds;
  std::vector<double> taus;
  std::string reason;
};

using Certificate = std::variant<NotSemidiscrete, SemidiscreteInverseFree,
                                 RankOneSchottky, Inconclusive>;

const char* certificate_kind(const Certificate& c);

Certificate two_gen_disjoint_test(const MoebiusMap& f, const MoebiusMap& g);

/// Forward limit set [alpha(f), alpha(g)] of a crossing pair, the arc between
/// the attracting points that holds no repelling point.
BoundaryArc crossing_limit_interval(const MoebiusMap& f, const MoebiusMap& g);
/// cos phi for the map with translation length tau at crossing angle theta.
double crossing_cos_phi(double tau, double theta);

Certificate triple_crossing_test(const MoebiusMap& f, const MoebiusMap& g,
                                 const MoebiusMap& h);

struct CertifyOptions {
  double margin = kDefaultMargin;
};

Certificate certify(const std::vector<MoebiusMap>& fs,
                    const CertifyOptions& options = {});

using RawMatrix = std::array<double, 4>;  // a, b, c, d

/// Verified union X with every map sending closure(X) into X, or nothing.
std::optional<ArcUnion> uniform_hyperbolicity(
    const std::vector<RawMatrix>& tuple);

}  // namespace hypsemi
