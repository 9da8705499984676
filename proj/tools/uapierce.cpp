// Batch front end: uapierce <command> <inputs...> [options]
#include <iostream>

#include <CLI11.hpp>

#include "ua/cli.hpp"

int main(int argc, char** argv) {
  using namespace ua::cli;

  CLI::App app{"Finite universal algebra: congruences, centers and Pierce sheaves"};
  app.set_version_flag("--version", "uapierce 1.0");

  AnalysisRequest req;
  std::string format = "text";
  app.add_option("command", req.command, "con | fc | center | pierce | hom | certify | defines | sigma | sheaf")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("inputs", req.inputs, "input files (.alg, .hom, .lat)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-size", req.max_size, "cap on exhaustive enumerations")->capture_default_str();
  app.add_option("--max-iso-size", req.max_iso_size, "cap on isomorphism searches")->capture_default_str();
  app.add_flag("--oracle", req.oracle, "cross-check against exhaustive partition enumeration");
  app.add_flag("--lex", req.lex, "defines: test theta_{0,e} instead of theta_{1,e}");
  app.add_option("--formula", req.formula, "formula text");
  app.add_option("--formula-file", req.formula_file, "file holding one formula");
  app.add_option("--gen", req.generators, "certify: generator pair c,d (repeatable)");
  app.add_option("--pair", req.pairs, "certify: target pair a,b (repeatable)");
  app.add_option("--e", req.e, "sigma: tuple e");
  app.add_option("--f", req.f, "sigma: tuple f");
  app.add_option("--constant", req.constant_algebra, "sheaf: constant sheaf of this algebra over the site");
  app.add_option("--pierce", req.pierce_algebra, "sheaf: Pierce sheaf of this algebra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }
  req.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;

  const Report rep = run(req);
  if (req.format == OutputFormat::Json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.exit_status;
}
