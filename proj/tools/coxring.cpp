#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coxring/cli.hpp"

namespace {

coxring::Document load(const std::string& path, const std::string& fixture) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw coxring::ValidationError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return coxring::parse_document(buf.str());
  }
  if (!fixture.empty()) return coxring::bundled_document(fixture);
  return coxring::bundled_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Cox rings and their presentations"};
  std::string command;
  std::vector<std::string> args;
  std::string doc_path;
  std::string fixture;
  bool dump = false;
  coxring::Flags flags;

  std::string commands;
  for (const std::string& c : coxring::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + commands);
  app.add_option("args", args, "positional arguments of the command");
  app.add_option("--doc", doc_path, "document file (default: all bundled fixtures)");
  app.add_option("--fixture", fixture, "use one bundled fixture: chatelet, dp4, p1xp1");
  app.add_flag("--dump", dump, "print the loaded document and exit");
  app.add_option("--ring", flags.ring, "ring name");
  app.add_option("--subgroup", flags.subgroup, "subgroup name");
  app.add_option("--hom", flags.hom, "homomorphism name");
  app.add_option("--degree", flags.degree, "element name or comma separated coordinates");
  app.add_option("--action", flags.action, "action name");
  app.add_option("--cocycle", flags.cocycle, "cocycle name");
  app.add_option("--scheme", flags.scheme, "parameterization scheme name");
  app.add_option("--poly", flags.polys, "polynomial to test for ideal membership (repeatable)");
  app.add_option("--bound", flags.bound, "relation discovery degree bound")->capture_default_str();
  app.add_option("--cap", flags.cap, "enumeration cap for non-pointed gradings")->capture_default_str();
  app.add_option("--height", flags.height, "parameter height")->capture_default_str();
  app.add_option("--coverage", flags.coverage, "also check coverage of surface points up to this height");
  app.add_option("--steps", flags.steps, "number of multiples checked by generated-in-degree")->capture_default_str();
  app.add_flag("--json", flags.json, "machine-readable output");
  app.allow_extras(false);
  app.positionals_at_end(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  coxring::Document doc;
  try {
    doc = load(doc_path, fixture);
  } catch (const coxring::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (dump) {
    std::cout << coxring::serialize_document(doc);
    return 0;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return 1;
  }
  const coxring::CommandResult r = coxring::run_command(command, doc, flags, args);
  (r.exit_code == 0 ? std::cout : std::cerr) << r.output;
  return r.exit_code;
}
