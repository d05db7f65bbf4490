#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hypsemi/boundary_arcs.hpp"
#include "hypsemi/moebius.hpp"

namespace hypsemi {

/// Arcs symmetric with respect to the owner: a contains alpha(owner),
/// b contains beta(owner), closures disjoint, and the owner maps the
/// complement of b into a.
struct SymmetricIntervalPair {
  BoundaryArc a;
  BoundaryArc b;
  std::size_t owner;
};

// Symmetric arcs in the frame of f (beta -> 0, alpha -> infinity), where the
// perpendicular to the axis at position s is the half-circle |z| = e^s.
// A(s) runs from e^s to -e^s through infinity; B(t) from -e^t to e^t.
BoundaryArc symmetric_a_arc(const MoebiusMap& f, double s);
BoundaryArc symmetric_b_arc(const MoebiusMap& f, double t);
/// Position along the axis of f of the perpendicular ending at p.
double perpendicular_position(const MoebiusMap& f, const BoundaryPoint& p);
/// The geodesic on the arc endpoints meets the axis of f orthogonally.
bool is_symmetric(const BoundaryArc& arc, const MoebiusMap& f,
                  double tolerance = 1e-7);

/// Requires C(f, g) > 1 and tau(f), tau(g) > log C + 3/2.
std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_disjoint_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                              std::size_t f_index = 0,
                              std::size_t g_index = 1);

/// Requires crossing axes and tau(f), tau(g) > |log|C|| + 3/2; additionally
/// throws ThresholdNotMet when the translation lengths are too short for
/// disjoint symmetric arcs at the crossing angle.
std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_crossing_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                              std::size_t f_index = 0,
                              std::size_t g_index = 1);

/// Symmetric arcs for two maps sharing their attracting point, built in the
/// frame where that point is infinity. Requires tau > log 6.
std::pair<SymmetricIntervalPair, SymmetricIntervalPair>
build_shared_alpha_pair_intervals(const MoebiusMap& f, const MoebiusMap& g,
                                  std::size_t f_index = 0,
                                  std::size_t g_index = 1);

struct SharedIntervals {
  BoundaryArc a;  // (5/2, -3/2) through infinity in normal form
  BoundaryArc b;  // (-1/2, 3/2) in normal form
  /// Sends normal form to the original coordinates.
  MoebiusMap conjugator;
};

/// All maps share the attracting point; every map sends the complement of b
/// into a. Requires every tau > log 5.
SharedIntervals build_shared_alpha_intervals(const std::vector<MoebiusMap>& fs);
/// Same for a common repelling point, via the inverses with roles swapped.
SharedIntervals build_shared_beta_intervals(const std::vector<MoebiusMap>& fs);

struct GeneratorIntervals {
  BoundaryArc a;  // innermost A^k
  BoundaryArc b;  // innermost B^k
  double a_position;
  double b_position;
  double d;  // distance between the two perpendiculars
  std::size_t a_partner;
  std::size_t b_partner;
};

struct SharedGroup {
  std::vector<std::size_t> members;
  bool shared_alpha;
  std::optional<SharedIntervals> intervals;
};

struct PairConstant {
  std::size_t i;
  std::size_t j;
  double cross_ratio;
  double constant;  // distance between the paired perpendiculars
  double axes_distance;
};

struct GlobalIntervalSystem {
  std::vector<GeneratorIntervals> generators;
  std::vector<SharedGroup> groups;
  std::vector<PairConstant> pairs;
  ArcUnion arcs;
  double constant_m = 0.0;
  double clearance = 0.0;
};

struct AssembleOptions {
  double margin = kDefaultMargin;
  /// Reject inputs whose translation lengths do not exceed the upper
  /// threshold. The construction itself only needs tau_k > d_k.
  bool require_upper_threshold = true;
};

GlobalIntervalSystem assemble_global(const std::vector<MoebiusMap>& fs,
                                     const AssembleOptions& options = {});

}  // namespace hypsemi
