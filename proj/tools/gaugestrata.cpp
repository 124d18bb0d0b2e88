// gaugestrata <command> <config.json> [--out PATH] [--mode curvature|ambrose-singer]
//             [--tol X] [--seed N]

#include "gaugestrata/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
  using namespace gaugestrata;

  CLI::App app{"Gauge-orbit strata, vacuum exponent and momentum-map constraints for SU(2)/SU(3)"};
  std::string command;
  std::string config_path;
  std::string out;
  std::string mode;
  double tol = 0.0;
  std::uint64_t seed = 0;

  std::vector<std::string> commands;
  for (auto n : commands::names()) {
    commands.emplace_back(n);
  }
  app.add_option("command", command, "Subcommand to run")->required()->check(CLI::IsMember(commands));
  app.add_option("config", config_path, "JSON run configuration")->required();
  auto* out_opt = app.add_option("--out", out, "Write tabular output (scan) to this file");
  auto* mode_opt = app.add_option("--mode", mode, "Holonomy mode")
                       ->check(CLI::IsMember({"curvature", "ambrose-singer"}));
  auto* tol_opt = app.add_option("--tol", tol, "Membership (qc-check) or quadrature (sigma) tolerance")
                      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random lattice inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  RunFlags flags;
  if (*out_opt) {
    flags.out = out;
  }
  if (*mode_opt) {
    flags.mode = mode == "curvature" ? HolonomyMode::CurvatureSpan : HolonomyMode::AmbroseSinger;
  }
  if (*tol_opt) {
    flags.tol = tol;
  }
  if (*seed_opt) {
    flags.seed = seed;
  }

  RunConfig cfg;
  try {
    cfg = config::load(config_path);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return commands::run(command, cfg, flags, std::cout, std::cerr);
}
