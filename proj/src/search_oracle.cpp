#include "hypsemi/search_oracle.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hypsemi/error.hpp"

namespace hypsemi {

namespace {

using Key = std::array<std::int64_t, 5>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::int64_t v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

// Bucket width tol times a power of two at least the largest entry, so
// matrices of any size quantize at the same relative resolution.
struct Grid {
  int exponent;
  double q;
};

std::optional<Grid> grid_for(const MoebiusMap& m, double tol) {
  double big = 1.0;
  for (double v : m.entries()) {
    if (!std::isfinite(v)) return std::nullopt;
    big = std::max(big, std::fabs(v));
  }
  const int e = std::ilogb(big) + 1;
  const double q = std::ldexp(tol, e);
  if (!(std::fabs(big / q) < 4e18)) return std::nullopt;
  return Grid{e, q};
}

std::optional<Key> key_of(const MoebiusMap& m, double tol) {
  const auto g = grid_for(m, tol);
  if (!g) return std::nullopt;
  Key k{};
  for (int i = 0; i < 4; ++i) {
    k[i] = static_cast<std::int64_t>(std::llround(m.entries()[i] / g->q));
  }
  k[4] = g->exponent;
  return k;
}

bool is_elliptic(const MoebiusMap& m, double tol) {
  return std::fabs(m.trace()) < 2.0 - tol;
}

void check_budget(std::size_t explored, const OracleOptions& options) {
  if (explored > options.max_words) {
    throw Error(ErrorKind::kBudgetExceeded,
                "word budget of " + std::to_string(options.max_words) +
                    " exceeded");
  }
}

void require_inputs(const std::vector<MoebiusMap>& fs, std::size_t max_len) {
  if (fs.empty()) throw Error(ErrorKind::kPreconditionViolated, "no generators");
  if (max_len < 1) {
    throw Error(ErrorKind::kPreconditionViolated, "max_len must be >= 1");
  }
}

// Breadth-first walk calling visit(word) on each new word; visit returns
// false to stop. Returns the number of duplicates pruned.
template <typename Visit>
std::size_t walk(const std::vector<MoebiusMap>& fs, std::size_t max_len,
                 const OracleOptions& options, std::size_t& explored,
                 Visit&& visit) {
  std::unordered_set<Key, KeyHash> seen;
  std::size_t duplicates = 0;
  std::deque<Word> frontier;
  frontier.push_back({{}, MoebiusMap::identity()});
  while (!frontier.empty()) {
    Word w = std::move(frontier.front());
    frontier.pop_front();
    if (w.letters.size() >= max_len) continue;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      Word next{w.letters, compose(w.matrix, fs[j])};
      next.letters.push_back(j);
      ++explored;
      check_budget(explored, options);
      if (const auto k = key_of(next.matrix, options.dedup_tol)) {
        if (!seen.insert(*k).second) {
          ++duplicates;
          continue;
        }
      }
      if (!visit(next)) return duplicates;
      frontier.push_back(std::move(next));
    }
  }
  return duplicates;
}

}  // namespace

EnumerationReport enumerate(const std::vector<MoebiusMap>& fs,
                            std::size_t max_len, const OracleOptions& options) {
  require_inputs(fs, max_len);
  EnumerationReport r;
  r.max_len = max_len;
  r.min_identity_distance = std::numeric_limits<double>::infinity();
  r.duplicates = walk(fs, max_len, options, r.words_explored, [&](const Word& w) {
    const double dist = identity_distance(w.matrix);
    if (dist < r.min_identity_distance) {
      r.min_identity_distance = dist;
      r.closest_to_identity = w;
    }
    if (is_elliptic(w.matrix, options.elliptic_tol)) {
      ++r.elliptic_count;
      if (r.elliptic_words.size() < options.keep_elliptic) {
        r.elliptic_words.push_back(w);
      }
    }
    return true;
  });
  return r;
}

std::optional<Word> find_elliptic(const std::vector<MoebiusMap>& fs,
                                  std::size_t max_len,
                                  const OracleOptions& options) {
  require_inputs(fs, max_len);
  std::optional<Word> found;
  std::size_t explored = 0;
  walk(fs, max_len, options, explored, [&](const Word& w) {
    if (is_elliptic(w.matrix, options.elliptic_tol)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

std::vector<BoundaryPoint> chaos_game(const std::vector<MoebiusMap>& fs,
                                      std::size_t samples, std::uint64_t seed) {
  if (fs.empty()) throw Error(ErrorKind::kPreconditionViolated, "no generators");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
  // Letters come in runs of geometric length (mean 10). Uniform letters
  // almost never repeat one generator long enough to reach the neighbourhood
  // of its attracting point.
  std::bernoulli_distribution keep(0.9);
  std::size_t letter = pick(rng);
  auto next = [&] {
    if (!keep(rng)) letter = pick(rng);
    return letter;
  };
  BoundaryPoint x = is_hyperbolic(fs[0]) ? require_hyperbolic(fs[0]).alpha
                                         : BoundaryPoint::infinity();
  for (int k = 0; k < 100; ++k) x = apply_boundary(fs[next()], x);
  std::vector<BoundaryPoint> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    x = apply_boundary(fs[next()], x);
    out.push_back(x);
  }
  return out;
}

bool inverse_free_probe(const std::vector<MoebiusMap>& fs, std::size_t max_len,
                        const OracleOptions& options) {
  require_inputs(fs, max_len);
  // Coarser buckets than the dedup grid; neighbouring buckets are probed so
  // near-boundary matches are not lost.
  const double tol = std::max(options.dedup_tol, 1e-8);
  std::unordered_map<Key, std::vector<MoebiusMap>, KeyHash> buckets;
  std::vector<MoebiusMap> words;
  std::size_t explored = 0;
  bool identity_hit = false;
  walk(fs, max_len, options, explored, [&](const Word& w) {
    if (identity_distance(w.matrix) < tol) {
      identity_hit = true;
      return false;
    }
    words.push_back(w.matrix);
    if (const auto k = key_of(w.matrix, tol)) buckets[*k].push_back(w.matrix);
    return true;
  });
  if (identity_hit) return false;
  for (const MoebiusMap& w : words) {
    const MoebiusMap target = inverse(w);
    const auto g = grid_for(target, tol);
    if (!g) continue;
    std::array<std::array<std::int64_t, 2>, 4> options_per_entry{};
    for (int i = 0; i < 4; ++i) {
      const double x = target.entries()[i] / g->q;
      const auto k = static_cast<std::int64_t>(std::llround(x));
      options_per_entry[i] = {k, x > static_cast<double>(k) ? k + 1 : k - 1};
    }
    for (int mask = 0; mask < 16; ++mask) {
      Key key{};
      for (int i = 0; i < 4; ++i) key[i] = options_per_entry[i][(mask >> i) & 1];
      key[4] = g->exponent;
      const auto it = buckets.find(key);
      if (it == buckets.end()) continue;
      // Products of large matrices carry rounding of order eps * scale^2.
      const double scale = std::ldexp(1.0, g->exponent);
      const double slack = std::max(
          tol, 64.0 * std::numeric_limits<double>::epsilon() * scale * scale);
      for (const MoebiusMap& u : it->second) {
        if (identity_distance(compose(u, w)) < slack) return false;
      }
    }
  }
  return true;
}

}  // namespace hypsemi
