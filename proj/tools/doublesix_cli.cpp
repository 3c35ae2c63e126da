// Command-line front end: validate and analyze six-line arrangements, run
// the canonical polarized models, match the two sides at the diagram level,
// and run the acceptance battery. Exit codes: 0 all checks pass, 1 input
// error, 2 certificate failure.

#include "doublesix/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace doublesix;

std::array<ProjTriple, 6> load_arrangement(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad JSON: ") + e.what());
  }
  return arrangement_from_json(j);
}

int emit(const ReportResult& res, bool as_json, const std::string& dot_dir) {
  if (!dot_dir.empty()) write_dot_files(res, dot_dir);
  if (as_json)
    std::cout << res.doc.dump(2) << "\n";
  else
    std::cout << render_text(res.doc);
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for six-line double planes and their polarized partners"};
  app.require_subcommand(1);

  std::string input, dot_dir;
  bool as_json = false, as_text = false, special = false;

  auto* analyze = app.add_subcommand("analyze", "run the double-plane pipeline on an arrangement");
  analyze->add_option("--input", input, "arrangement JSON file")->required();
  analyze->add_flag("--json", as_json, "emit the JSON report");
  analyze->add_flag("--text", as_text, "emit the text report (default)");
  analyze->add_option("--dot", dot_dir, "write DOT diagrams into this directory");

  auto* xside = app.add_subcommand("xside", "run the polarized-model pipeline");
  xside->add_flag("--special", special, "use the H+E8+E7 model");
  xside->add_flag("--json", as_json, "emit the JSON report");
  xside->add_flag("--text", as_text, "emit the text report (default)");
  xside->add_option("--dot", dot_dir, "write DOT diagrams into this directory");

  auto* match = app.add_subcommand("match", "match an arrangement's W diagram to its X diagram");
  match->add_option("--input", input, "arrangement JSON file")->required();
  match->add_flag("--json", as_json, "emit the JSON report");
  match->add_flag("--text", as_text, "emit the text report (default)");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance battery");
  (void)selftest;
  (void)as_text;

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("analyze")) {
      auto coeffs = load_arrangement(input);
      return emit(analyze_report(coeffs), as_json, dot_dir);
    }
    if (app.got_subcommand("xside")) {
      return emit(xside_report(special), as_json, dot_dir);
    }
    if (app.got_subcommand("match")) {
      auto coeffs = load_arrangement(input);
      return emit(match_report(coeffs), as_json, dot_dir);
    }
    if (app.got_subcommand("selftest")) {
      return doublesix::selftest_main(std::cout);
    }
  } catch (const doublesix::Error& e) {
    std::cerr << "error (" << doublesix::errc_name(e.code) << "): " << e.what() << "\n";
    switch (e.code) {
      case doublesix::Errc::ParseError:
      case doublesix::Errc::DuplicateLine:
      case doublesix::Errc::ConcurrentTriple:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
