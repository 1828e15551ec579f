// Command-line front end: jostlp <command> [--config PATH] [--out DIR]
// [--seed U64] [--tol FLOAT] [--grid-points N]

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "jostlp/jostlp.hpp"

int main(int argc, char **argv) {
  CLI::App app{"1-D scattering and dyadic spectral-localization toolkit"};
  app.require_subcommand(0, 0);

  std::string command, config_path, out_dir;
  std::uint64_t seed = 0;
  double tol = 0;
  int grid_points = 0;

  app.add_option("command", command,
                 "one of: scatter, jost, kernel, besov, crossloc, counterexample, "
                 "verify-all")
      ->required();
  app.add_option("--config", config_path, "config file (key=value with [sections])");
  app.add_option("--out", out_dir, "output directory (default from config)");
  app.add_option("--seed", seed, "probe RNG seed override");
  app.add_option("--tol", tol, "solver tolerance override");
  app.add_option("--grid-points", grid_points, "spatial grid size override");

  CLI11_PARSE(app, argc, argv);

  jostlp::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = jostlp::load_config(config_path);
  } catch (const std::exception &e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }
  cfg.command = command;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed != 0) cfg.seed = seed;
  if (tol != 0) cfg.tol = tol;
  if (grid_points != 0) cfg.n_points = grid_points;

  return jostlp::run(cfg, std::cout);
}
