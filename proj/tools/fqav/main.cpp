#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fqav/io.hpp"

namespace {

bool read_all(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify finite quotients of products of elliptic curves"};
  std::string command;
  std::string path;
  std::string format = "json";
  fqav::CommandOptions options;

  app.add_option("command", command, "validate | classify | ramification | reidtai | decompose | report")
      ->required()
      ->check(CLI::IsMember({"validate", "classify", "ramification", "reidtai", "decompose", "report"}));
  app.add_option("file", path, "input JSON, or - for stdin")->required();
  app.add_option("--cap", options.cap, "maximum group order");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--field", options.conductor, "conductor m of the cyclotomic field Q(zeta_m)");
  CLI11_PARSE(app, argc, argv);

  options.format = format == "md" ? fqav::Format::Markdown : fqav::Format::Json;
  std::string text;
  if (!read_all(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  const fqav::CommandResult result = fqav::run_command(*fqav::parse_command(command), text, options);
  std::cout << result.document;
  std::cerr << result.diagnostics;
  return result.exit_code;
}
