#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace logfol::cli;

  CLI::App app{"Fundamental groups and connectivity of generic leaves of logarithmic foliations"};
  app.set_version_flag("--version", std::string(LOGFOL_VERSION_STRING));

  std::string command;
  std::string spec_path = "-";
  std::string format = "json";
  RunOptions options;

  app.add_option("command", command, "complement-pi | leaf-pi | resonance | connectivity | "
                                     "hyperplane-section | verify-periods | full")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("spec", spec_path, "spec document (JSON); '-' reads standard input");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--strict", options.strict, "treat residue-sum violations and n < 2 as errors");
  app.add_option("--seed", options.seed, "seed for the generic line of verify-periods");
  app.add_option("--samples", options.samples, "trapezoid samples per loop")->check(CLI::Range(64, 1 << 24));
  app.add_option("--tolerance", options.tolerance, "oracle tolerance")->check(CLI::PositiveNumber);
  app.add_option("--height-bound", options.height_bound, "height bound for numeric relation search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  std::string document;
  if (spec_path == "-") {
    document.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "logfol: cannot open " << spec_path << '\n';
      return kExitValidation;
    }
    document.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  const RunResult result = run_document(command, document, options);
  if (format == "json")
    std::cout << result.report.dump(2) << '\n';
  else
    std::cout << render_text(result.report);
  if (result.report.contains("error"))
    std::cerr << "logfol: " << result.report["error"]["kind"].get<std::string>() << ": "
              << result.report["error"]["message"].get<std::string>() << '\n';
  return result.exit_code;
}
