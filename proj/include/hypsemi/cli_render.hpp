#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypsemi/criteria.hpp"
#include "hypsemi/moebius.hpp"
#include "hypsemi/search_oracle.hpp"
#include "json.hpp"

namespace hypsemi {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Input schema 1:
//   {"schema": 1, "model": "half-plane" | "disc",
//    "generators": [{"matrix": [a, b, c, d]},
//                   {"axis": {"beta": p, "alpha": q}, "tau": t}, ...]}
// Boundary values are reals (half-plane), angles in radians (disc), or "inf".
// Matrices are always in half-plane coordinates.
struct InputSpec {
  std::string model = "half-plane";
  std::vector<RawMatrix> matrices;
  /// Built from an axis, so det = 1 already; large entries would not survive
  /// renormalization.
  std::vector<bool> unimodular;
  std::vector<std::string> labels;
};

InputSpec parse_input(const nlohmann::json& j);
/// Throws ParseError with the JSON position or the offending field.
InputSpec parse_input_text(const std::string& text);
InputSpec read_input_file(const std::string& path);

/// Generators as maps; throws ParseError for a non-positive determinant.
std::vector<MoebiusMap> generator_maps(const InputSpec& in);

nlohmann::json point_json(const BoundaryPoint& p);
nlohmann::json arc_json(const BoundaryArc& arc);
nlohmann::json thresholds_json(const Thresholds& t);
nlohmann::json certificate_json(const Certificate& c);

struct CommandResult {
  nlohmann::json json;
  std::string text;
  int exit_code = 0;
};

CommandResult cmd_classify(const InputSpec& in);
CommandResult cmd_pairs(const InputSpec& in);

struct CertifyFlags {
  double margin = kDefaultMargin;
  std::size_t max_words = OracleOptions{}.max_words;
  bool cross_check = false;
  std::size_t max_len = 12;
};
CommandResult cmd_certify(const InputSpec& in, const CertifyFlags& flags = {});

CommandResult cmd_cocycle(const InputSpec& in);

struct OracleFlags {
  std::size_t max_len = 10;
  std::size_t max_words = OracleOptions{}.max_words;
  double dedup_tol = OracleOptions{}.dedup_tol;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
};
CommandResult cmd_oracle(const InputSpec& in, const OracleFlags& flags = {});

struct RenderSpec {
  int size = 480;
  double axis_stroke = 1.5;
  double arc_stroke = 4.0;
  bool axes = true;
  bool arcs = true;
  bool labels = true;
};

/// SVG 1.1 of the disc with the generator axes; arcs listed under "union" in
/// the certificate (if given) are drawn on the boundary.
std::string render_svg(const InputSpec& in,
                       const std::optional<nlohmann::json>& certificate,
                       const RenderSpec& spec = {});

}  // namespace hypsemi
