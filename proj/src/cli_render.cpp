#include "hypsemi/cli_render.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hypsemi/error.hpp"
#include "hypsemi/pair_geometry.hpp"

namespace hypsemi {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParseError, where + ": " + what);
}

json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(where, "expected a finite number");
  return v;
}

BoundaryPoint read_boundary(const json& j, const std::string& model,
                            const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return BoundaryPoint::infinity();
    parse_fail(where, "expected a number or \"inf\"");
  }
  const double v = read_number(j, where);
  return model == "disc" ? BoundaryPoint::from_disc_angle(v)
                         : BoundaryPoint::from_real(v);
}

RawMatrix read_generator(const json& g, const std::string& model,
                         const std::string& where) {
  if (!g.is_object()) parse_fail(where, "expected an object");
  if (g.contains("matrix")) {
    const json& m = g["matrix"];
    if (!m.is_array() || m.size() != 4) {
      parse_fail(where + ".matrix", "expected [a, b, c, d]");
    }
    RawMatrix out{};
    for (std::size_t k = 0; k < 4; ++k) {
      out[k] = read_number(m[k], fmt::format("{}.matrix[{}]", where, k));
    }
    return out;
  }
  if (g.contains("axis")) {
    const json& ax = g["axis"];
    if (!ax.is_object() || !ax.contains("beta") || !ax.contains("alpha")) {
      parse_fail(where + ".axis", "expected {\"beta\": ..., \"alpha\": ...}");
    }
    if (!g.contains("tau")) parse_fail(where, "axis form needs \"tau\"");
    const double tau = read_number(g["tau"], where + ".tau");
    if (!(tau > 0.0)) parse_fail(where + ".tau", "must be positive");
    const BoundaryPoint beta = read_boundary(ax["beta"], model, where + ".axis.beta");
    const BoundaryPoint alpha =
        read_boundary(ax["alpha"], model, where + ".axis.alpha");
    try {
      return from_axis_and_length(beta, alpha, tau).entries();
    } catch (const Error& e) {
      parse_fail(where + ".axis", e.what());
    }
  }
  parse_fail(where, "expected \"matrix\" or \"axis\"");
}

std::string point_text(const BoundaryPoint& p) {
  if (p.is_infinity()) return "inf";
  return fmt::format("{:.6g}", p.real());
}

json word_json(const Word& w) {
  return {{"letters", w.letters},
          {"length", w.letters.size()},
          {"trace", num(w.matrix.trace())}};
}

json classification_json(const Classification& c) {
  json row;
  row["kind"] = kind_name(kind_of(c));
  if (const auto* h = std::get_if<Hyperbolic>(&c)) {
    row["alpha"] = point_json(h->alpha);
    row["beta"] = point_json(h->beta);
    row["tau"] = num(h->tau);
  } else if (const auto* p = std::get_if<Parabolic>(&c)) {
    row["fixed"] = point_json(p->fixed);
  } else if (const auto* e = std::get_if<Elliptic>(&c)) {
    row["rotation"] = num(e->rotation);
  }
  return row;
}

json header(const char* command) {
  return {{"schema", kSchemaVersion},
          {"tool_version", kToolVersion},
          {"command", command}};
}

json union_json(const ArcUnion& u) {
  json arr = json::array();
  for (const BoundaryArc& a : u.arcs()) arr.push_back(arc_json(a));
  return arr;
}

}  // namespace

InputSpec parse_input(const json& j) {
  if (!j.is_object()) parse_fail("input", "expected an object");
  if (j.contains("schema")) {
    if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion) {
      parse_fail("schema", fmt::format("unsupported, expected {}", kSchemaVersion));
    }
  }
  InputSpec in;
  if (j.contains("model")) {
    if (!j["model"].is_string()) parse_fail("model", "expected a string");
    in.model = j["model"].get<std::string>();
    if (in.model != "half-plane" && in.model != "disc") {
      parse_fail("model", "expected \"half-plane\" or \"disc\"");
    }
  }
  if (!j.contains("generators") || !j["generators"].is_array()) {
    parse_fail("generators", "expected an array");
  }
  const json& gs = j["generators"];
  if (gs.empty()) parse_fail("generators", "at least one generator is needed");
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const std::string where = fmt::format("generators[{}]", k);
    in.matrices.push_back(read_generator(gs[k], in.model, where));
    in.unimodular.push_back(!gs[k].contains("matrix"));
    if (gs[k].contains("label")) {
      if (!gs[k]["label"].is_string()) parse_fail(where + ".label", "expected a string");
      in.labels.push_back(gs[k]["label"].get<std::string>());
    } else {
      in.labels.push_back(fmt::format("f{}", k + 1));
    }
  }
  return in;
}

InputSpec parse_input_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  return parse_input(j);
}

InputSpec read_input_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_input_text(ss.str());
}

std::vector<MoebiusMap> generator_maps(const InputSpec& in) {
  std::vector<MoebiusMap> out;
  for (std::size_t k = 0; k < in.matrices.size(); ++k) {
    const RawMatrix& m = in.matrices[k];
    try {
      out.push_back(k < in.unimodular.size() && in.unimodular[k]
                        ? MoebiusMap::from_unimodular(m[0], m[1], m[2], m[3])
                        : MoebiusMap::normalize(m[0], m[1], m[2], m[3]));
    } catch (const Error& e) {
      parse_fail(fmt::format("generators[{}]", k), e.what());
    }
  }
  return out;
}

json point_json(const BoundaryPoint& p) {
  return {{"real", p.is_infinity() ? json("inf") : json(p.real())},
          {"angle", p.disc_angle() + 0.0}};
}

json arc_json(const BoundaryArc& arc) {
  return {{"start", point_json(arc.start())},
          {"end", point_json(arc.end())},
          {"start_angle", arc.start_angle()},
          {"length", arc.length()}};
}

json thresholds_json(const Thresholds& t) {
  json pairs = json::array();
  for (const PairEntry& p : t.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"cross_ratio", num(p.cross_ratio)},
                     {"disjoint", p.disjoint},
                     {"counted", p.counted},
                     {"pair_lower", num(p.pair_lower)}});
  }
  return {{"lower", num(t.lower)},
          {"upper", t.has_upper ? num(t.upper) : json(nullptr)},
          {"pairs", pairs}};
}

json certificate_json(const Certificate& c) {
  json out;
  out["kind"] = certificate_kind(c);
  if (const auto* ns = std::get_if<NotSemidiscrete>(&c)) {
    json word = json::array();
    for (const WitnessLetter& l : ns->word) {
      word.push_back({{"generator", l.generator}, {"exponent", l.exponent}});
    }
    out["criterion"] = ns->criterion;
    out["word"] = word;
    out["trace"] = ns->trace ? num(*ns->trace) : json(nullptr);
    out["generators"] = ns->generators;
    out["sub_semigroup"] = ns->sub_semigroup;
    out["detail"] = ns->detail;
  } else if (const auto* s = std::get_if<SemidiscreteInverseFree>(&c)) {
    const GlobalIntervalSystem& sys = s->system;
    out["union"] = union_json(sys.arcs);
    out["constant_m"] = num(sys.constant_m);
    out["clearance"] = num(sys.clearance);
    json gens = json::array();
    for (const GeneratorIntervals& g : sys.generators) {
      gens.push_back({{"a", arc_json(g.a)},
                      {"b", arc_json(g.b)},
                      {"a_position", num(g.a_position)},
                      {"b_position", num(g.b_position)},
                      {"d", num(g.d)},
                      {"a_partner", g.a_partner},
                      {"b_partner", g.b_partner}});
    }
    out["generators"] = gens;
    json groups = json::array();
    for (const SharedGroup& g : sys.groups) {
      json row = {{"members", g.members}, {"shared_alpha", g.shared_alpha}};
      if (g.intervals) {
        row["normal_form"] = {{"a", arc_json(g.intervals->a)},
                              {"b", arc_json(g.intervals->b)}};
      }
      groups.push_back(row);
    }
    out["groups"] = groups;
    json pairs = json::array();
    for (const PairConstant& p : sys.pairs) {
      pairs.push_back({{"i", p.i},
                       {"j", p.j},
                       {"cross_ratio", num(p.cross_ratio)},
                       {"constant", num(p.constant)},
                       {"axes_distance", num(p.axes_distance)}});
    }
    out["pairs"] = pairs;
  } else if (const auto* r = std::get_if<RankOneSchottky>(&c)) {
    out["interval"] = arc_json(r->interval);
    out["union"] = json::array({arc_json(r->interval)});
    out["margin"] = num(r->margin);
    out["clearance"] = num(r->clearance);
  } else if (const auto* ic = std::get_if<Inconclusive>(&c)) {
    out["thresholds"] = thresholds_json(ic->thresholds);
    json taus = json::array();
    for (double t : ic->taus) taus.push_back(num(t));
    out["taus"] = taus;
    out["reason"] = ic->reason;
  }
  return out;
}

CommandResult cmd_classify(const InputSpec& in) {
  const std::vector<MoebiusMap> fs = generator_maps(in);
  CommandResult r;
  r.json = header("classify");
  json rows = json::array();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const Classification c = classify(fs[k]);
    json row = classification_json(c);
    row["index"] = k;
    row["label"] = in.labels[k];
    rows.push_back(row);

    std::string line = fmt::format("{:<6} {:<10}", in.labels[k], kind_name(kind_of(c)));
    if (const auto* h = std::get_if<Hyperbolic>(&c)) {
      line += fmt::format(" alpha={} beta={} tau={:.6f}", point_text(h->alpha),
                          point_text(h->beta), h->tau);
    } else if (const auto* p = std::get_if<Parabolic>(&c)) {
      line += fmt::format(" fixed={}", point_text(p->fixed));
    } else if (const auto* e = std::get_if<Elliptic>(&c)) {
      line += fmt::format(" rotation={:.6f}", e->rotation);
    }
    r.text += line + "\n";
  }
  r.json["generators"] = rows;
  return r;
}

CommandResult cmd_pairs(const InputSpec& in) {
  const std::vector<MoebiusMap> fs = generator_maps(in);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    try {
      require_hyperbolic(fs[k]);
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("generator {}: {}", k, e.what()));
    }
  }
  CommandResult r;
  r.json = header("pairs");
  const std::size_t n = fs.size();
  json table = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(num(cross_ratio(fs[i], fs[j]).value()));
    }
    table.push_back(row);
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const PairGeometry g = configuration(fs[i], fs[j]);
      const double c = g.cross_ratio.value();
      json row = {{"i", i},
                  {"j", j},
                  {"cross_ratio", num(c)},
                  {"configuration", configuration_name(g.config)}};
      std::string extra;
      if (const auto* x = std::get_if<Crossing>(&g.config)) {
        row["theta"] = num(x->theta);
        extra = fmt::format(" theta={:.6f}", x->theta);
      } else if (const auto* d = std::get_if<Disjoint>(&g.config)) {
        row["d"] = num(d->d);
        row["nested_attractors"] = d->nested_attractors;
        extra = fmt::format(" d={:.6f}", d->d);
      }
      pairs.push_back(row);
      r.text += fmt::format("{} {}  C={:.9g}  {}{}\n", in.labels[i], in.labels[j], c,
                            configuration_name(g.config), extra);
    }
  }
  r.json["table"] = table;
  r.json["pairs"] = pairs;
  return r;
}

CommandResult cmd_certify(const InputSpec& in, const CertifyFlags& flags) {
  const std::vector<MoebiusMap> fs = generator_maps(in);
  CertifyOptions opts;
  opts.margin = flags.margin;
  const Certificate cert = certify(fs, opts);

  CommandResult r;
  r.json = header("certify");
  r.json.update(certificate_json(cert));
  r.json["margin"] = num(flags.margin);
  if (!r.json.contains("thresholds")) {
    try {
      r.json["thresholds"] = thresholds_json(compute_thresholds(fs));
    } catch (const Error&) {
      r.json["thresholds"] = nullptr;
    }
  }
  r.exit_code = std::holds_alternative<Inconclusive>(cert) ? 2 : 0;

  r.text = fmt::format("kind: {}\n", certificate_kind(cert));
  if (const auto* ns = std::get_if<NotSemidiscrete>(&cert)) {
    std::string w;
    for (const WitnessLetter& l : ns->word) {
      w += fmt::format("{}^{} ", in.labels[l.generator], l.exponent);
    }
    r.text += fmt::format("criterion: {}\nword: {}\n", ns->criterion, w);
    if (ns->trace) r.text += fmt::format("trace: {:.9g}\n", *ns->trace);
  } else if (const auto* s = std::get_if<SemidiscreteInverseFree>(&cert)) {
    r.text += fmt::format("components: {}\nM: {:.6f}\nclearance: {:.6g}\n",
                          s->system.arcs.size(), s->system.constant_m,
                          s->system.clearance);
    for (const BoundaryArc& a : s->system.arcs.arcs()) {
      r.text += fmt::format("  arc start={:.6f} length={:.6f}\n", a.start_angle(),
                            a.length());
    }
  } else if (const auto* ro = std::get_if<RankOneSchottky>(&cert)) {
    r.text += fmt::format("interval: {} .. {}\n", point_text(ro->interval.start()),
                          point_text(ro->interval.end()));
  } else if (const auto* ic = std::get_if<Inconclusive>(&cert)) {
    r.text += fmt::format("reason: {}\nlower: {:.6f}\n", ic->reason,
                          ic->thresholds.lower);
    if (ic->thresholds.has_upper) {
      r.text += fmt::format("upper: {:.6f}\n", ic->thresholds.upper);
    }
  }

  if (flags.cross_check) {
    OracleOptions oo;
    oo.max_words = flags.max_words;
    json cc = {{"empirical", true}, {"max_len", flags.max_len}};
    try {
      const std::optional<Word> w = find_elliptic(fs, flags.max_len, oo);
      cc["elliptic_word"] = w ? word_json(*w) : json(nullptr);
      const bool claims_free = std::holds_alternative<SemidiscreteInverseFree>(cert) ||
                               std::holds_alternative<RankOneSchottky>(cert);
      cc["consistent"] = !(claims_free && w);
      r.text += fmt::format("cross-check (empirical): elliptic word {}\n",
                            w ? "found" : "not found");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBudgetExceeded) throw;
      cc["elliptic_word"] = nullptr;
      cc["budget_exceeded"] = true;
      r.text += "cross-check (empirical): budget exceeded\n";
    }
    r.json["cross_check"] = cc;
  }
  return r;
}

CommandResult cmd_cocycle(const InputSpec& in) {
  const std::optional<ArcUnion> x = uniform_hyperbolicity(in.matrices);
  CommandResult r;
  r.json = header("cocycle");
  if (!x) {
    r.json["result"] = "inconclusive";
    r.text = "inconclusive\n";
    r.exit_code = 2;
    return r;
  }
  r.json["result"] = "multicone";
  r.json["union"] = union_json(*x);
  json images = json::array();
  double clearance = std::numeric_limits<double>::infinity();
  for (const RawMatrix& m : in.matrices) {
    const MoebiusMap f = MoebiusMap::from_unimodular(m[0], m[1], m[2], m[3]);
    // Orientation-reversing members never reach here: the test is inconclusive.
    json row = json::array();
    for (const BoundaryArc& a : x->arcs()) {
      try {
        row.push_back(arc_json(arc_image(f, a)));
      } catch (const Error&) {
        row.push_back(nullptr);  // narrower than the angle resolution
      }
    }
    images.push_back(row);
    clearance = std::min(clearance, schottky_clearance(f, *x));
  }
  r.json["images"] = images;
  r.json["clearance"] = num(clearance);
  r.text = fmt::format("multicone: {} arcs, clearance {:.6g}\n", x->size(), clearance);
  for (const BoundaryArc& a : x->arcs()) {
    r.text += fmt::format("  arc start={:.6f} length={:.6f}\n", a.start_angle(),
                          a.length());
  }
  return r;
}

CommandResult cmd_oracle(const InputSpec& in, const OracleFlags& flags) {
  const std::vector<MoebiusMap> fs = generator_maps(in);
  OracleOptions oo;
  oo.max_words = flags.max_words;
  oo.dedup_tol = flags.dedup_tol;
  const EnumerationReport rep = enumerate(fs, flags.max_len, oo);

  CommandResult r;
  r.json = header("oracle");
  r.json["empirical"] = true;
  json words = json::array();
  for (const Word& w : rep.elliptic_words) words.push_back(word_json(w));
  r.json["enumeration"] = {
      {"max_len", rep.max_len},
      {"words_explored", rep.words_explored},
      {"duplicates", rep.duplicates},
      {"min_identity_distance", num(rep.min_identity_distance)},
      {"closest_to_identity",
       rep.closest_to_identity ? word_json(*rep.closest_to_identity) : json(nullptr)},
      {"elliptic_count", rep.elliptic_count},
      {"elliptic_words", words}};
  const bool free = inverse_free_probe(fs, std::min<std::size_t>(flags.max_len, 8), oo);
  r.json["inverse_free_probe"] = free;

  const bool hyperbolic = std::all_of(fs.begin(), fs.end(),
                                      [](const MoebiusMap& f) { return is_hyperbolic(f); });
  std::size_t occupied = 0;
  if (hyperbolic && flags.samples > 0) {
    constexpr std::size_t kBins = 360;
    std::vector<bool> bin(kBins, false);
    for (const BoundaryPoint& p : chaos_game(fs, flags.samples, flags.seed)) {
      const auto k = static_cast<std::size_t>(p.disc_angle() / kTwoPi * kBins);
      bin[std::min(k, kBins - 1)] = true;
    }
    occupied = static_cast<std::size_t>(std::count(bin.begin(), bin.end(), true));
    // Runs of occupied bins, starting after an empty one so wrap-around runs
    // stay whole.
    json runs = json::array();
    if (occupied == kBins) {
      runs.push_back({0.0, kTwoPi});
    } else if (occupied > 0) {
      std::size_t first = 0;
      while (bin[first]) ++first;
      for (std::size_t s = 0; s < kBins; ++s) {
        const std::size_t k = (first + s) % kBins;
        if (!bin[k] || bin[(k + kBins - 1) % kBins]) continue;
        std::size_t len = 0;
        while (bin[(k + len) % kBins]) ++len;
        runs.push_back({kTwoPi * k / kBins, kTwoPi * len / kBins});
      }
    }
    r.json["chaos_game"] = {{"samples", flags.samples},
                            {"seed", flags.seed},
                            {"bins", kBins},
                            {"occupied_bins", occupied},
                            {"runs", runs}};
  } else {
    r.json["chaos_game"] = nullptr;
  }

  r.text = fmt::format(
      "empirical only\nwords explored: {}\nduplicates: {}\n"
      "min identity distance: {:.6g}\nelliptic words: {}\ninverse-free probe: {}\n",
      rep.words_explored, rep.duplicates, rep.min_identity_distance,
      rep.elliptic_count, free ? "pass" : "fail");
  if (hyperbolic && flags.samples > 0) {
    r.text += fmt::format("chaos game: {} samples, {} of 360 bins hit\n", flags.samples,
                          occupied);
  }
  return r;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Canvas {
  double cx, cy, radius;
  // Disc coordinates (y up) to pixels (y down).
  double px(double u) const { return cx + radius * u; }
  double py(double v) const { return cy - radius * v; }
};

std::string boundary_arc_path(const Canvas& cv, double start, double length) {
  if (length >= kTwoPi - 1e-9) {
    return fmt::format(
        "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" class=\"interval\"/>\n", cv.cx,
        cv.cy, cv.radius);
  }
  const double end = start + length;
  // Counterclockwise on the page is the negative SVG sweep.
  return fmt::format(
      "<path d=\"M {:.3f} {:.3f} A {:.3f} {:.3f} 0 {} 0 {:.3f} {:.3f}\" "
      "class=\"interval\"/>\n",
      cv.px(std::cos(start)), cv.py(std::sin(start)), cv.radius, cv.radius,
      length > kPi ? 1 : 0, cv.px(std::cos(end)), cv.py(std::sin(end)));
}

std::string geodesic(const Canvas& cv, const MoebiusMap& f, const std::string& label,
                     const RenderSpec& spec) {
  const Hyperbolic h = require_hyperbolic(f);
  const double pb = h.beta.disc_angle(), pa = h.alpha.disc_angle();
  const double bx = std::cos(pb), by = std::sin(pb);
  const double ax = std::cos(pa), ay = std::sin(pa);
  const double delta = angular_distance(h.beta, h.alpha);

  std::string out;
  double mx = 0.0, my = 0.0, tx = ax - bx, ty = ay - by, nx, ny;
  const double tn = std::hypot(tx, ty);
  tx /= tn;
  ty /= tn;
  if (kPi - delta < 1e-9) {
    out += fmt::format("<path d=\"M {:.3f} {:.3f} L {:.3f} {:.3f}\" class=\"axis\"/>\n",
                       cv.px(bx), cv.py(by), cv.px(ax), cv.py(ay));
    nx = -ty;
    ny = tx;
  } else {
    const double cos_half = std::cos(0.5 * delta);
    const double ccx = (bx + ax) / (2.0 * cos_half * cos_half);
    const double ccy = (by + ay) / (2.0 * cos_half * cos_half);
    const double r = std::tan(0.5 * delta);
    const double cross = (bx - ccx) * (ay - ccy) - (by - ccy) * (ax - ccx);
    out += fmt::format(
        "<path d=\"M {:.3f} {:.3f} A {:.3f} {:.3f} 0 0 {} {:.3f} {:.3f}\" "
        "class=\"axis\"/>\n",
        cv.px(bx), cv.py(by), cv.radius * r, cv.radius * r, cross > 0 ? 0 : 1,
        cv.px(ax), cv.py(ay));
    const double un = std::hypot(ccx, ccy);
    const double ux = ccx / un, uy = ccy / un;
    const double dist = 1.0 / cos_half - r;
    mx = ux * dist;
    my = uy * dist;
    tx = -uy;
    ty = ux;
    if (tx * (ax - bx) + ty * (ay - by) < 0) {
      tx = -tx;
      ty = -ty;
    }
    nx = -ux;
    ny = -uy;
  }
  // Arrowhead in pixels; page y runs down.
  const double s = 7.0;
  const double Mx = cv.px(mx), My = cv.py(my);
  const double Tx = tx, Ty = -ty, Nx = -Ty, Ny = Tx;
  out += fmt::format(
      "<polygon points=\"{:.3f},{:.3f} {:.3f},{:.3f} {:.3f},{:.3f}\" class=\"arrow\"/>\n",
      Mx + s * Tx, My + s * Ty, Mx - s * Tx + 0.7 * s * Nx, My - s * Ty + 0.7 * s * Ny,
      Mx - s * Tx - 0.7 * s * Nx, My - s * Ty - 0.7 * s * Ny);
  out += fmt::format(
      "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3\" class=\"alpha\"/>\n"
      "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3\" class=\"beta\"/>\n",
      cv.px(ax), cv.py(ay), cv.px(bx), cv.py(by));
  if (spec.labels) {
    out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">{}</text>\n",
                       cv.px(mx + 0.07 * nx), cv.py(my + 0.07 * ny), xml_escape(label));
  }
  return out;
}

}  // namespace

std::string render_svg(const InputSpec& in, const std::optional<json>& certificate,
                       const RenderSpec& spec) {
  if (spec.size <= 0 || spec.axis_stroke <= 0.0 || spec.arc_stroke <= 0.0) {
    throw Error(ErrorKind::kPreconditionViolated, "render sizes must be positive");
  }
  const std::vector<MoebiusMap> fs = generator_maps(in);
  const double size = spec.size;
  const Canvas cv{0.5 * size, 0.5 * size, 0.42 * size};

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" "
      "height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
      "<style>\n"
      ".disc {{ fill: none; stroke: #000000; stroke-width: 1; }}\n"
      ".axis {{ fill: none; stroke: #1f3a93; stroke-width: {1}; }}\n"
      ".arrow {{ fill: #1f3a93; stroke: none; }}\n"
      ".interval {{ fill: none; stroke: #c0392b; stroke-width: {2}; "
      "stroke-opacity: 0.8; }}\n"
      ".alpha {{ fill: #1f3a93; stroke: #1f3a93; }}\n"
      ".beta {{ fill: #ffffff; stroke: #1f3a93; }}\n"
      "text {{ font-family: serif; font-size: 14px; text-anchor: middle; "
      "dominant-baseline: middle; }}\n"
      "</style>\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      "<circle cx=\"{3:.3f}\" cy=\"{4:.3f}\" r=\"{5:.3f}\" class=\"disc\"/>\n",
      spec.size, spec.axis_stroke, spec.arc_stroke, cv.cx, cv.cy, cv.radius);

  if (spec.arcs && certificate && certificate->is_object() &&
      certificate->contains("union")) {
    const json& u = (*certificate)["union"];
    if (!u.is_array()) parse_fail("certificate.union", "expected an array");
    out += "<g id=\"intervals\">\n";
    for (std::size_t k = 0; k < u.size(); ++k) {
      const std::string where = fmt::format("certificate.union[{}]", k);
      if (!u[k].is_object() || !u[k].contains("start_angle") || !u[k].contains("length")) {
        parse_fail(where, "expected start_angle and length");
      }
      out += boundary_arc_path(cv, read_number(u[k]["start_angle"], where + ".start_angle"),
                               read_number(u[k]["length"], where + ".length"));
    }
    out += "</g>\n";
  }
  if (spec.axes) {
    out += "<g id=\"axes\">\n";
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (!is_hyperbolic(fs[k])) continue;
      out += geodesic(cv, fs[k], in.labels[k], spec);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hypsemi
