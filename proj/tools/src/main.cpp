#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "gtc/cli/commands.hpp"

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string localizer = "w1";
  std::uint64_t budget = gtc::kDefaultBudget;
  std::uint64_t cap = gtc::EnumerationLimits{}.cap;
  unsigned dim = 3;
  std::string catalog;
  std::string output;
  std::string format = "text";
  std::string object;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--input,-i", o.inputs, "Input document(s)")->required();
  app->add_option("--localizer", o.localizer, "w1 or winf")->check(CLI::IsMember({"w1", "winf"}));
  app->add_option("--budget", o.budget, "Coset enumeration budget")->check(CLI::PositiveNumber);
  app->add_option("--cap", o.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  app->add_option("--dim", o.dim, "Nerve dimension")->check(CLI::PositiveNumber);
  app->add_option("--catalog", o.catalog, "Catalog document for weak-test evidence");
  app->add_option("--output,-o", o.output, "Write the structured report to this path");
  app->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app->add_option("--object", o.object, "Object id for per-object commands");
}

const std::map<std::string, std::string> kDescriptions{
    {"validate", "Parse and validate a document"},
    {"elements", "Category of elements of a groupoid-valued presheaf and its fibration check"},
    {"grothendieck", "Grothendieck construction of a category-valued presheaf"},
    {"nerve", "Simplex counts of the nerve up to --dim"},
    {"homology", "Integral homology of the nerve up to --dim"},
    {"pi1", "Fundamental groupoid and vertex group presentations"},
    {"w1", "W1 verdict for a functor, or for C -> e given a category"},
    {"istar", "I*(C) for a diagram and a category"},
    {"counit", "Counit elements(I*(C)) -> C"},
    {"transpose", "Adjunction bijection and triangle identities for X and C"},
    {"sieve", "Sieve classifier of a presheaf interval"},
    {"aspherical", "Asphericity verdict for a category"},
    {"morphism", "Aspherical-morphism verdict for a functor"},
    {"hierarchy", "Aspherical, local test, test, strict test and weak-test verdicts"},
    {"weak-test", "Weak-test evidence against a catalog"},
    {"interval", "Multiplicative laws and strong separation of an interval"},
    {"iso-suite", "Canonical isomorphisms for a presheaf at every object"},
    {"thomason", "Pointwise and total verdicts for a presheaf morphism"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace gtc::cli;
  CLI::App app{"Finite-category checks for test categories and groupoidal localizers", "gtc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options opts;
  std::string command;

  CLI::App* check = app.add_subcommand("check", "Hierarchy, interval and consistency checks");
  check->require_subcommand(1);
  for (const std::string& name : commands()) {
    if (name.rfind("check ", 0) == 0) {
      CLI::App* sub = check->add_subcommand(name.substr(6), kDescriptions.at(name.substr(6)));
      add_common(sub, opts);
      sub->callback([&command, name] { command = name; });
    } else {
      CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
      add_common(sub, opts);
      sub->callback([&command, name] { command = name; });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  RunConfig config;
  config.command = command;
  for (const auto& p : opts.inputs) config.inputs.emplace_back(p);
  config.localizer = opts.localizer == "w1" ? gtc::LocalizerSpec::w1(opts.budget)
                                            : gtc::LocalizerSpec::winfty(opts.dim, opts.budget);
  config.localizer.dimension = opts.dim;
  config.cap = opts.cap;
  if (!opts.catalog.empty()) config.catalog = opts.catalog;
  if (!opts.output.empty()) config.output = opts.output;
  config.format = opts.format == "structured" ? Format::Structured : Format::Text;
  if (!opts.object.empty()) config.object = opts.object;

  const RunResult result = dispatch(config);
  if (config.output) {
    std::ofstream out(*config.output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << config.output->string() << "\n";
      return kInputError;
    }
    out << result.report.dump(2) << "\n";
  }
  if (config.format == Format::Structured) {
    std::cout << result.report.dump(2) << "\n";
  } else {
    std::cout << render_text(result.report);
  }
  return result.exit_code;
}
