#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "foliacoh/commands.hpp"
#include "foliacoh/kernels.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "validate") return "Check a document against the schema and its invariants";
  if (name == "cohomology") return "Cohomology of A and of its basic subcomplex, or LES exactness for a sequence of complexes";
  if (name == "equivariant") return "Cartan-model equivariant cohomology with the Weil-model cross-check";
  if (name == "spectral") return "Spectral sequence pages and the formality verdict";
  if (name == "module") return "Hilbert series, Tor, freeness, depth, Cohen-Macaulay and localized rank";
  if (name == "strata") return "Equivariant and basic Poincare series from a strata model";
  if (name == "morse") return "Morse series, perfectness and the Morse inequalities";
  if (name == "polytope") return "Basic Poincare polynomial from the f-vector of a simple polytope";
  return "List or run the bundled golden fixtures and acceptance criteria";
}

}  // namespace

int main(int argc, char** argv) {
  foliacoh::kernels::configure_from_environment();
  CLI::App app{"Exact cohomology computations for Killing foliations and g*-algebras"};
  app.require_subcommand(1);
  foliacoh::cli::CommandOptions opt;
  std::string input, output;
  int max_degree = -1;

  for (const auto& name : foliacoh::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    if (name == "fixtures") {
      sub->add_option("action", opt.fixtures_action, "list | run")->check(CLI::IsMember({"list", "run"}));
      sub->add_option("--fixture-dir", opt.fixture_dir, "Directory of fixture documents");
    } else {
      sub->add_option("--input,-i", input, "Input document (JSON)")->required();
      sub->add_option("--max-degree,-N", max_degree, "Degree window N")->check(CLI::NonNegativeNumber);
    }
    sub->add_option("--output,-o", output, "Write the result here instead of stdout");
    sub->add_option("--filter", opt.filter, "Substring selecting fixtures");
    sub->add_option("--format", opt.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    sub->callback([&opt, name] { opt.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return foliacoh::cli::kInvalidInput;
  }

  if (!input.empty()) opt.input = input;
  if (!output.empty()) opt.output = output;
  if (max_degree >= 0) opt.max_degree = max_degree;

  const auto result = foliacoh::cli::run_command(opt);
  if (opt.output) {
    std::ofstream out(*opt.output);
    if (!out) {
      std::cerr << "cannot write '" << *opt.output << "'\n";
      return foliacoh::cli::kInvalidInput;
    }
    out << result.text;
  } else {
    std::cout << result.text;
  }
  return result.exit_code;
}
