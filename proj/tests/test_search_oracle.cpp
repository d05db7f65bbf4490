#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hypsemi/criteria.hpp"
#include "hypsemi/error.hpp"
#include "hypsemi/pair_geometry.hpp"
#include "hypsemi/search_oracle.hpp"
#include "test_support.hpp"

using namespace hypsemi;
using doctest::Approx;
using testsupport::rectangle_five;
using testsupport::pair_with_cr;

namespace {

const MoebiusMap kTwo = MoebiusMap::normalize(2, 0, 0, 1);
const MoebiusMap kHalfPlusOne = MoebiusMap::normalize(0.5, 1, 0, 1);

}  // namespace

TEST_CASE("enumeration of the doubling and halving semigroup") {
  const EnumerationReport r = enumerate({kTwo, kHalfPlusOne}, 12);
  CHECK(r.elliptic_count == 0);
  CHECK(r.elliptic_words.empty());
  CHECK(r.min_identity_distance > 0.1);
  CHECK(r.words_explored > 1000);
  CHECK(r.max_len == 12);

  for (int n = 1; n <= 12; ++n) {
    const MoebiusMap w = compose(power(kHalfPlusOne, n), power(kTwo, n));
    const MoebiusMap shift = MoebiusMap::normalize(1, 2, 0, 1);
    CHECK(testsupport::max_entry_diff(w, shift) ==
          Approx(std::ldexp(1.0, 1 - n)));
  }

  // Longer bounds can only bring words closer to the identity.
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t len = 1; len <= 10; ++len) {
    const double d = enumerate({kTwo, kHalfPlusOne}, len).min_identity_distance;
    CHECK(d <= prev);
    prev = d;
  }
}

TEST_CASE("elliptic words") {
  auto [f, g] = pair_with_cr(9.0, 0.1, 0.1);
  const auto w = find_elliptic({f, g}, 40);
  REQUIRE(w);
  const EllipticWitness ew = elliptic_witness_disjoint(f, g);
  const long ones = std::count(w->letters.begin(), w->letters.end(), 0u);
  CHECK(ones == ew.m);
  CHECK(static_cast<long>(w->letters.size()) - ones == ew.n);
  CHECK(std::fabs(w->matrix.trace()) < 2.0 - 1e-9);

  const double tau = std::log(9.0) + 1.6;
  auto [f2, g2] = pair_with_cr(9.0, tau, tau);
  CHECK_FALSE(find_elliptic({f2, g2}, 14));
  CHECK_FALSE(find_elliptic({kTwo}, 20));

  OracleOptions small;
  small.max_words = 1000;
  CHECK_THROWS_AS(enumerate({f, g}, 40, small), Error);
  try {
    enumerate({f, g}, 40, small);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudgetExceeded);
  }
}

TEST_CASE("deduplication") {
  // f and its square commute, so words collapse to powers of f.
  const EnumerationReport r = enumerate({kTwo, power(kTwo, 2)}, 6);
  CHECK(r.duplicates > 0);
  CHECK(r.words_explored == r.duplicates + 12);
}

TEST_CASE("chaos game on a crossing pair fills the limit interval") {
  auto [f, g] = pair_with_cr(-1.0, 0.15, 0.15);
  const BoundaryArc arc = crossing_limit_interval(f, g);
  const std::vector<BoundaryPoint> pts = chaos_game({f, g}, 1000000, 7);
  REQUIRE(pts.size() == 1000000);
  std::vector<double> offsets;
  for (const BoundaryPoint& p : pts) {
    double off = wrap_angle(p.disc_angle() - arc.start_angle());
    if (off > kPi + 0.5 * arc.length()) off -= kTwoPi;
    CHECK(off >= -1e-9);
    CHECK(off <= arc.length() + 1e-9);
    offsets.push_back(off);
  }
  std::sort(offsets.begin(), offsets.end());
  double worst = std::max(offsets.front(), arc.length() - offsets.back());
  for (std::size_t k = 1; k < offsets.size(); ++k) {
    worst = std::max(worst, 0.5 * (offsets[k] - offsets[k - 1]));
  }
  CHECK(worst < 1e-2);

  const std::vector<BoundaryPoint> again = chaos_game({f, g}, 1000, 7);
  for (std::size_t k = 0; k < again.size(); ++k) {
    CHECK(again[k].x() == pts[k].x());
    CHECK(again[k].y() == pts[k].y());
  }
}

TEST_CASE("chaos game edge cases") {
  for (const BoundaryPoint& p : chaos_game({kTwo}, 100, 1)) {
    CHECK(p.is_infinity());
  }
  const std::vector<MoebiusMap> fs = rectangle_five(41.0);
  const GlobalIntervalSystem sys = assemble_global(fs);
  for (const BoundaryPoint& p : chaos_game(fs, 20000, 3)) {
    CHECK(sys.arcs.contains(p));
  }
}

TEST_CASE("inverse-free probe") {
  CHECK(inverse_free_probe({kTwo, kHalfPlusOne}, 10));
  CHECK_FALSE(inverse_free_probe({kTwo, inverse(kTwo)}, 2));
  const MoebiusMap other = MoebiusMap::normalize(3, 1, 2, 1);
  CHECK_FALSE(inverse_free_probe({other, kTwo, inverse(other)}, 3));
  const double tau = std::log(9.0) + 1.6;
  auto [f, g] = pair_with_cr(9.0, tau, tau);
  REQUIRE(std::holds_alternative<SemidiscreteInverseFree>(certify({f, g})) ==
          false);  // between the global bounds for two generators
  REQUIRE(std::holds_alternative<SemidiscreteInverseFree>(
      two_gen_disjoint_test(f, g)));
  CHECK(inverse_free_probe({f, g}, 10));
}

TEST_CASE("property: oracle agrees with certificates") {
  std::mt19937_64 rng(101);
  int witnessed = 0, schottky = 0;
  for (int trial = 0; trial < 200 && (witnessed < 15 || schottky < 15); ++trial) {
    const bool small = trial % 2 == 0;
    MoebiusMap f = testsupport::random_hyperbolic(rng, small ? 0.005 : 3.0,
                                                  small ? 0.1 : 8.0, 0.4);
    const MoebiusMap g = testsupport::random_hyperbolic(
        rng, small ? 0.005 : 3.0, small ? 0.1 : 8.0, 0.4);
    const CrossRatioValue cr = cross_ratio(f, g);
    if (cr.is_infinite()) continue;
    const double c = cr.value();
    if (c < 0.02 || std::fabs(c - 1.0) < 0.02 || c > 500.0) continue;
    if (c < 1.0) f = inverse(f);
    const Certificate cert = two_gen_disjoint_test(f, g);
    if (const auto* ns = std::get_if<NotSemidiscrete>(&cert)) {
      long len = 0;
      for (const WitnessLetter& l : ns->word) len += l.exponent;
      if (len > 16) continue;
      const auto w = find_elliptic({f, g}, static_cast<std::size_t>(len));
      CHECK(w.has_value());
      ++witnessed;
    } else if (std::holds_alternative<SemidiscreteInverseFree>(cert)) {
      CHECK_FALSE(find_elliptic({f, g}, 12).has_value());
      const EnumerationReport r = enumerate({f, g}, 12);
      CHECK(r.min_identity_distance > 10.0 * OracleOptions{}.dedup_tol);
      ++schottky;
    }
  }
  CHECK(witnessed >= 15);
  CHECK(schottky >= 15);
}
