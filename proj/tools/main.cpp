#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qacp/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Imprecise conditional probability assessments: g-coherence checking, correction, bound "
      "propagation, and synthesis of conditional probabilities with quasi-additive conditioning "
      "classes."};
  app.require_subcommand(1);

  std::string file;
  std::string event_text;
  std::string given_text;
  std::optional<std::string> precise_csv;
  bool trace = false;
  std::size_t oracle_cap = 12;

  auto* check = app.add_subcommand("check", "Check g-coherence of an assessment file");
  check->add_option("file", file, "assessment file")->required();

  auto* correct = app.add_subcommand("correct", "Least-committal correction of the intervals");
  correct->add_option("file", file, "assessment file")->required();

  auto* bounds = app.add_subcommand("bounds", "Coherent probability bounds for a further event");
  bounds->add_option("file", file, "assessment file")->required();
  bounds->add_option("--event", event_text, "consequent expression")->required();
  bounds->add_option("--given", given_text, "antecedent expression")->required();

  auto* synthesize = app.add_subcommand(
      "synthesize", "Build the merged conditional probability with its quasi-additive class");
  synthesize->add_option("file", file, "assessment file")->required();
  std::string precise_arg;
  auto* precise_opt = synthesize->add_option(
      "--precise", precise_arg, "comma-separated precise values overriding the midpoint choice");
  synthesize->add_flag("--trace", trace, "record every linear program solved");

  auto* verify = app.add_subcommand("verify", "Re-run all checks on a stored result document");
  verify->add_option("file", file, "result JSON file")->required();
  verify->add_option("--oracle-cap", oracle_cap, "subset sweep limit (default 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (precise_opt->count() > 0) precise_csv = precise_arg;

  if (check->parsed()) return qacp::cli_check(file, std::cout, std::cerr);
  if (correct->parsed()) return qacp::cli_correct(file, std::cout, std::cerr);
  if (bounds->parsed()) {
    return qacp::cli_bounds(file, event_text, given_text, std::cout, std::cerr);
  }
  if (synthesize->parsed()) {
    return qacp::cli_synthesize(file, precise_csv, trace, std::cout, std::cerr);
  }
  if (verify->parsed()) return qacp::cli_verify(file, oracle_cap, std::cout, std::cerr);
  return 2;
}
