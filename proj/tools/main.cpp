#include <iostream>

#include <CLI11.hpp>

#include "netgame/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibrium solver for attack and defense games on "
               "networks"};
  app.require_subcommand(1);

  netgame::SolveOptions solve_opts;
  auto* solve = app.add_subcommand(
      "solve", "Compute the Nash equilibrium of a game instance");
  solve->add_option("game", solve_opts.input, "game instance file (JSON)")
      ->required();
  solve->add_option("--tolerance", solve_opts.tolerance,
                    "verification tolerance (default 1e-9)");
  solve->add_flag("--verify", solve_opts.verify,
                  "check the result against the equilibrium conditions");
  solve->add_option("--dot", solve_opts.dot_file,
                    "write the attack tree in DOT format to this file");
  solve->add_option("--output", solve_opts.output_file,
                    "write the equilibrium to this file instead of stdout");

  netgame::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand(
      "verify", "Check an equilibrium file against a game instance");
  verify->add_option("game", verify_opts.game_file, "game instance file")
      ->required();
  verify->add_option("equilibrium", verify_opts.eq_file, "equilibrium file")
      ->required();
  verify->add_option("--tolerance", verify_opts.tolerance,
                     "tolerance (default 1e-9)");

  netgame::GenOptions gen_opts;
  auto* gen = app.add_subcommand(
      "gen", "Generate a random connected instance on stdout");
  gen->add_option("--nodes", gen_opts.nodes, "number of defenders")
      ->required();
  gen->add_option("--edge-prob", gen_opts.edge_prob,
                  "edge probability in (0, 1]")
      ->required();
  gen->add_option("--seed", gen_opts.seed, "generator seed")->required();
  bool no_sort_b = false;
  gen->add_flag("--no-sort-b", no_sort_b,
                "assign valuations in random label order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed())
    return netgame::run_solve(solve_opts, std::cout, std::cerr);
  if (verify->parsed())
    return netgame::run_verify(verify_opts, std::cout, std::cerr);
  gen_opts.sort_b = !no_sort_b;
  return netgame::run_gen(gen_opts, std::cout, std::cerr);
}
