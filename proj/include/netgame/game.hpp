#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "netgame/cost.hpp"
#include "netgame/graph.hpp"

namespace netgame {

/// An attack-and-defense game: the attacker sits at node 0 of an undirected
/// connected graph, defenders are nodes 1..n. Defender j is worth b[j] to the
/// attacker, loses d[j] when successfully attacked, and buys interception
/// probability at cost costs[j]. Vectors are indexed by label; slot 0 is
/// unused.
struct GameInstance {
  int n = 0;
  Graph graph;
  std::vector<double> b;
  std::vector<double> d;
  std::vector<CostFunction> costs;

  bool all_quadratic() const;
};

/// Convenience builder: b and d are given per defender (index 0 <-> label 1),
/// all costs quadratic with the same gamma. Does not validate.
GameInstance make_quadratic_game(int n,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<double>& b,
                                 const std::vector<double>& d,
                                 double gamma = 1.0);

/// Gate for every solver entry point. Checks connectivity, positivity and
/// pairwise-distinct b, and the cost-function contract (c'(0) = 0,
/// c'(1) >= d_j, derivative inverse round-trip). Returns its argument.
const GameInstance& validate(const GameInstance& g);

/// The same game with defenders relabeled so that labels ascend with b.
struct CanonicalGame {
  GameInstance game;
  std::vector<int> to_canonical;  // original label -> canonical label
  std::vector<int> to_original;   // canonical label -> original label
};

CanonicalGame canonicalize(const GameInstance& g);

/// Pure-strategy equilibrium: the attacker commits to one path onto the
/// most valuable defender, who alone invests. Labels are original.
struct PureEquilibrium {
  int target = 0;
  std::vector<int> path;
  double investment = 0.0;
  double utility = 0.0;
};

/// Pure equilibria exist iff the top defender's defended value still beats
/// every defender reachable without crossing him. O(n + |E|): one traversal
/// of the graph with the top node deleted.
std::optional<PureEquilibrium> check_pure_ne(const CanonicalGame& cg);

}  // namespace netgame
