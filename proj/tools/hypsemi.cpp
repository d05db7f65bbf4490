#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hypsemi/cli_render.hpp"
#include "hypsemi/error.hpp"

using namespace hypsemi;

namespace {

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIoError, "cannot write " + path);
  f << body;
  if (!f) throw Error(ErrorKind::kIoError, "write failed for " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypsemi: semidiscreteness certificates for Moebius semigroups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string input, output, format = "json", certificate;
  CertifyFlags cflags;
  OracleFlags oflags;
  RenderSpec rspec;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "input JSON file")->required();
    sub->add_option("--output", output, "output file (stdout by default)");
  };
  auto with_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify each generator");
  common(classify_cmd);
  with_format(classify_cmd);

  CLI::App* pairs_cmd = app.add_subcommand("pairs", "cross ratios of all pairs");
  common(pairs_cmd);
  with_format(pairs_cmd);

  CLI::App* certify_cmd = app.add_subcommand("certify", "run the certification criteria");
  common(certify_cmd);
  with_format(certify_cmd);
  certify_cmd->add_option("--margin", cflags.margin, "clearance margin in radians")
      ->check(CLI::NonNegativeNumber);
  certify_cmd->add_option("--max-words", cflags.max_words, "oracle word budget");
  certify_cmd->add_flag("--cross-check", cflags.cross_check,
                        "also search for elliptic words");
  certify_cmd->add_option("--max-len", cflags.max_len, "cross-check word length");

  CLI::App* cocycle_cmd = app.add_subcommand("cocycle", "uniform hyperbolicity test");
  common(cocycle_cmd);
  with_format(cocycle_cmd);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "empirical word search");
  common(oracle_cmd);
  with_format(oracle_cmd);
  oracle_cmd->add_option("--max-len", oflags.max_len, "word length bound");
  oracle_cmd->add_option("--max-words", oflags.max_words, "word budget");
  oracle_cmd->add_option("--seed", oflags.seed, "chaos game seed");
  oracle_cmd->add_option("--samples", oflags.samples, "chaos game samples");

  CLI::App* render_cmd = app.add_subcommand("render", "SVG of the disc picture");
  common(render_cmd);
  render_cmd->add_option("--certificate", certificate, "certificate JSON to overlay");
  render_cmd->add_option("--size", rspec.size, "canvas size in px")
      ->check(CLI::PositiveNumber);
  render_cmd->add_flag("!--no-labels", rspec.labels, "omit labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const InputSpec in = read_input_file(input);
    if (render_cmd->parsed()) {
      std::optional<nlohmann::json> cert;
      if (!certificate.empty()) cert = read_json_file(certificate);
      write_output(output, render_svg(in, cert, rspec));
      return 0;
    }
    CommandResult r;
    if (classify_cmd->parsed()) r = cmd_classify(in);
    if (pairs_cmd->parsed()) r = cmd_pairs(in);
    if (certify_cmd->parsed()) r = cmd_certify(in, cflags);
    if (cocycle_cmd->parsed()) r = cmd_cocycle(in);
    if (oracle_cmd->parsed()) r = cmd_oracle(in, oflags);
    write_output(output, format == "text" ? r.text : r.json.dump(2) + "\n");
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
