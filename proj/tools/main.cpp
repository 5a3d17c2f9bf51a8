#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Parabolic pushforwards and descent on superelliptic Belyi curves"};
  std::string input;
  std::string command;
  belyi::cli::Options opt;
  app.add_option("--input", input, "problem JSON file (default: stdin)");
  app.add_option("--command", command, "command, overriding the one in the input");
  app.add_option("--max-tau", opt.max_tau, "number of specializations tried by the descent oracle")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for randomized choices of splitting sections");
  app.add_flag("--corrupt-weight", opt.corrupt_weight)->group("");
  CLI11_PARSE(app, argc, argv);
  if (!command.empty()) opt.command = command;

  std::string text;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) {
      std::cout << belyi::cli::Json{{"error", {{"kind", "schema"}, {"message", "cannot read " + input}}}}.dump(2) << "\n";
      return belyi::cli::kSchema;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (command != "selftest") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  }
  const belyi::cli::Outcome out = belyi::cli::execute(text, opt);
  std::cout << out.report.dump(2) << "\n";
  return out.code;
}
