#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "netgame/game.hpp"

namespace netgame {

/// Tree on {0} u support describing who is attacked through whom: each
/// supported defender hangs below the cheapest defender the attacker must
/// cross to reach him. Valuations ascend from the root toward the leaves.
struct AttackTree {
  std::vector<int> support;  // ascending labels
  std::vector<int> parent;   // by label; -1 outside the support

  bool in_support(int j) const {
    return j > 0 && j < static_cast<int>(parent.size()) && parent[j] >= 0;
  }
  /// Nodes from the root to j, inclusive: (0, ..., j).
  std::vector<int> root_path(int j) const;
};

/// Solution of the first-order system on an attack tree: attack
/// probabilities q, investments x (zero outside the support) and the
/// attacker's equilibrium utility.
struct TreeEquilibrium {
  double utility = 0.0;
  std::vector<double> x;
  std::vector<double> q;
  int kstar = 0;
};

/// Full mixed equilibrium on the original graph, original labels: a
/// distribution over attack paths plus every defender's investment.
struct MixedEquilibrium {
  std::vector<std::pair<std::vector<int>, double>> attacker;  // (path, prob)
  std::vector<double> defense;  // by label, 0 for unattacked nodes
  double utility = 0.0;
  std::vector<int> support;
  AttackTree tree;  // diagnostic
};

using SolveResult = std::variant<PureEquilibrium, MixedEquilibrium>;

/// Attack-tree construction: reduce proper_g by everything outside d_set,
/// then attach every defender either to the attacker (when adjacent) or to
/// his cheapest surviving neighbor. Requires d_set to be an upper range of
/// the valuation order.
AttackTree build_attack_tree(const Graph& proper_g,
                             const std::vector<int>& d_set,
                             const std::vector<double>& b);

/// Total attack probability implied by the first-order conditions at
/// attacker utility U, for the support encoded by `tree`. Strictly
/// decreasing in U; equals 1 exactly at the equilibrium utility.
double eval_F(const CanonicalGame& cg, const AttackTree& tree, double utility);

/// Scan k = 1,2,... for the unique support {k,...,n} admitting the
/// equilibrium: F_k(b_k) <= 1 < F_k(b_{k-1}) (left inequality only for
/// k = 1). With scan_all the scan continues past the first hit and fails
/// unless the hit is unique.
std::pair<int, AttackTree> find_kstar(const CanonicalGame& cg,
                                      const Graph& proper_g,
                                      bool scan_all = false);

/// Root of F_{k*}(U) = 1. All-quadratic costs use the closed form
/// U = (B + sqrt(B^2 + 4AC)) / (2A); otherwise bisection on the bracket
/// (max(b_{k*-1}, 1e-12 b_n), b_{k*}] to absolute tolerance 1e-12.
double solve_attacker_utility(const CanonicalGame& cg, const AttackTree& tree,
                              int kstar, bool force_bisection = false);

/// Investments and attack probabilities from the first-order conditions at
/// utility U. Fails (normalization_failure) if the probabilities do not sum
/// to 1 within 1e-9; they are never renormalized.
TreeEquilibrium compute_tree_strategies(const CanonicalGame& cg,
                                        const AttackTree& tree,
                                        double utility);

/// Expand every tree edge into a connecting path of the original graph and
/// map the profile back to original labels.
MixedEquilibrium reconstruct_equilibrium(const CanonicalGame& cg,
                                         const Graph& original_graph,
                                         const AttackTree& tree,
                                         const TreeEquilibrium& te);

/// Full pipeline: validate, canonicalize, pure-equilibrium check, linker
/// removal, support scan, utility root, strategies, reconstruction.
SolveResult solve(const GameInstance& game);

}  // namespace netgame
