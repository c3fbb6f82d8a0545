#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "realizer/cli.hpp"

int main(int argc, char** argv) {
  using namespace realizer;
  CLI::App app{"Check natural-deduction proofs, extract programs and run them."};
  app.require_subcommand(1);

  std::string path;
  std::string out_path;
  std::uint64_t fuel = lambda::kDefaultFuel;
  logic::Natural bound = 15;
  std::vector<logic::Natural> args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("proof", path, "Proof script")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_path, "Write results to this file instead of standard output");
  };
  auto add_fuel = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", fuel, "Maximum number of reduction steps")
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Check a proof and print its conclusion");
  add_common(check);
  auto* extract = app.add_subcommand("extract", "Print the program extracted from a proof");
  add_common(extract);
  auto* run = app.add_subcommand("run", "Compute the witness for the given inputs");
  add_common(run);
  add_fuel(run);
  run->add_option("args", args, "Natural-number inputs");
  auto* verify = app.add_subcommand("verify", "Check the extracted program on all small inputs");
  add_common(verify);
  add_fuel(verify);
  verify->add_option("--bound", bound, "Largest input value tried")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << out_path << ": cannot open for writing\n";
      return cli::kExitFail;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  if (check->parsed()) return cli::cmd_check(path, out, std::cerr);
  if (extract->parsed()) return cli::cmd_extract(path, out, std::cerr);
  if (run->parsed()) return cli::cmd_run(path, args, fuel, out, std::cerr);
  return cli::cmd_verify(path, bound, fuel, out, std::cerr);
}
