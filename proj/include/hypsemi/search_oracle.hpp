#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hypsemi/moebius.hpp"

namespace hypsemi {

/// letters[0] is applied last: the word is f[letters[0]] o f[letters[1]] o ...
struct Word {
  std::vector<std::size_t> letters;
  MoebiusMap matrix;
};

struct OracleOptions {
  double dedup_tol = 1e-10;
  std::size_t max_words = 2'000'000;
  /// Elliptic means |trace| < 2 - elliptic_tol.
  double elliptic_tol = 1e-9;
  /// Elliptic words kept in a report; the count covers all of them.
  std::size_t keep_elliptic = 32;
};

/// Empirical evidence only, never a certificate.
struct EnumerationReport {
  std::size_t max_len = 0;
  std::size_t words_explored = 0;
  std::size_t duplicates = 0;
  double min_identity_distance = 0.0;
  std::optional<Word> closest_to_identity;
  std::size_t elliptic_count = 0;
  std::vector<Word> elliptic_words;
};

/// Breadth-first over all words of length <= max_len. Words whose matrix
/// matches an earlier one within dedup_tol are counted and not extended.
EnumerationReport enumerate(const std::vector<MoebiusMap>& fs,
                            std::size_t max_len,
                            const OracleOptions& options = {});

/// First elliptic word in breadth-first order.
std::optional<Word> find_elliptic(const std::vector<MoebiusMap>& fs,
                                  std::size_t max_len,
                                  const OracleOptions& options = {});

/// Random forward orbit of alpha(fs[0]) after 100 burn-in steps; letters are
/// drawn in runs so the attracting points are approached too.
std::vector<BoundaryPoint> chaos_game(const std::vector<MoebiusMap>& fs,
                                      std::size_t samples, std::uint64_t seed);

/// False when two enumerated words (or one) compose to the identity within
/// tolerance. A necessary check at desk scale, not a proof.
bool inverse_free_probe(const std::vector<MoebiusMap>& fs, std::size_t max_len,
                        const OracleOptions& options = {});

}  // namespace hypsemi
