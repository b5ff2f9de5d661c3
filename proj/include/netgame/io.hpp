#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netgame/engine.hpp"

namespace netgame {

/// Parse a JSON game document: {"n": int, "edges": [[u,v],...],
/// "b": [n reals], "d": [n reals], "cost": gamma or [n gammas]} with
/// "cost" defaulting to 1.0. The returned instance is validated.
GameInstance parse_game(const std::string& text);
GameInstance parse_game_file(const std::string& path);

/// Inverse of parse_game (quadratic costs only).
std::string serialize_game(const GameInstance& g);

/// Serializable view of a solve result. defense is per defender (index
/// j-1 <-> label j); tree lists (node, parent) pairs of the attack tree.
struct EquilibriumDoc {
  bool pure = false;
  double utility = 0.0;
  std::vector<int> support;
  std::vector<double> defense;
  std::vector<std::pair<std::vector<int>, double>> attacker;
  std::vector<std::pair<int, int>> tree;
};

EquilibriumDoc make_doc(const SolveResult& result, int n);
std::string serialize_equilibrium(const EquilibriumDoc& doc);
EquilibriumDoc parse_equilibrium(const std::string& text);
EquilibriumDoc parse_equilibrium_file(const std::string& path);

/// Reshape a document into the profile form the verifier consumes.
MixedEquilibrium doc_profile(const EquilibriumDoc& doc);

/// DOT digraph of the attack tree, edges parent -> child.
std::string to_dot(const EquilibriumDoc& doc, const GameInstance& game);

/// Random connected instance: Erdos-Renyi edges at probability edge_prob,
/// unreached nodes attached to a random reached one, b strictly increasing
/// (sorted uniforms; shuffled when sort_b is false), d uniform in (0,1],
/// quadratic unit costs. Byte-deterministic per (nodes, edge_prob, seed,
/// sort_b).
GameInstance generate_instance(int nodes, double edge_prob, std::uint64_t seed,
                               bool sort_b = true);

struct SolveOptions {
  std::string input;
  double tolerance = 0.0;  // 0 = pick by cost family (1e-9 / 1e-7)
  bool verify = false;
  std::string dot_file;
  std::string output_file;
};

struct VerifyOptions {
  std::string game_file;
  std::string eq_file;
  double tolerance = 0.0;
};

struct GenOptions {
  int nodes = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
  bool sort_b = true;
};

// Command entry points; return the process exit code. 0 success, 2 parse or
// validation failure, 3 assumption violation detected after validation,
// 4 verification failure, 5 internal numerical error.
int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int run_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace netgame
