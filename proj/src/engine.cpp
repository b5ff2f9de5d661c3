#include "netgame/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "netgame/errors.hpp"

namespace netgame {

std::vector<int> AttackTree::root_path(int j) const {
  std::vector<int> path;
  for (int v = j; v != 0; v = parent[v]) path.push_back(v);
  path.push_back(0);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Attach every surviving defender to the attacker when adjacent, otherwise
// to the cheapest neighbor. Expects a graph where every node has one of the
// two (the reduced image of a proper graph).
AttackTree tree_from_reduced(const Graph& reduced,
                             const std::vector<double>& b) {
  AttackTree tree;
  tree.parent.assign(reduced.max_label() + 1, -1);
  for (int j : reduced.nodes()) {
    if (j == 0) continue;
    tree.support.push_back(j);
    if (reduced.has_edge(0, j)) {
      tree.parent[j] = 0;
      continue;
    }
    int best = -1;
    for (int nb : reduced.neighbors(j)) {
      if (nb == 0) continue;
      if (best == -1 || b[nb] < b[best]) best = nb;
    }
    if (best == -1 || b[best] >= b[j])
      raise(Errc::not_proper,
            "node " + std::to_string(j) +
                " has neither an attacker edge nor a cheaper neighbor");
    tree.parent[j] = best;
  }
  return tree;
}

}  // namespace

AttackTree build_attack_tree(const Graph& proper_g,
                             const std::vector<int>& d_set,
                             const std::vector<double>& b) {
  std::set<int> keep(d_set.begin(), d_set.end());
  for (int j : d_set)
    if (!proper_g.has_node(j))
      raise(Errc::node_absent,
            "support node " + std::to_string(j) + " not in graph");
  std::vector<int> drop;
  for (int v : proper_g.nodes())
    if (v != 0 && !keep.count(v)) drop.push_back(v);
  auto [reduced, trace] = reduce_by_set(proper_g, drop);
  return tree_from_reduced(reduced, b);
}

double eval_F(const CanonicalGame& cg, const AttackTree& tree,
              double utility) {
  const GameInstance& g = cg.game;
  if (!(utility > 0.0))
    raise(Errc::domain_error, "attacker utility must be positive");
  double total = 0.0;
  for (int j : tree.support) {
    const int k = tree.parent[j];
    if (k == 0) {
      if (utility > g.b[j])
        raise(Errc::domain_error,
              "utility exceeds the valuation of directly attacked node " +
                  std::to_string(j));
      total += g.costs[j].deriv(1.0 - utility / g.b[j]) / g.d[j];
    } else {
      total += g.b[k] * g.costs[j].deriv(1.0 - g.b[k] / g.b[j]) /
               (utility * g.d[j]);
    }
  }
  return total;
}

std::pair<int, AttackTree> find_kstar(const CanonicalGame& cg,
                                      const Graph& proper_g, bool scan_all) {
  const int n = cg.game.n;
  const std::vector<double>& b = cg.game.b;

  // Incremental prefix reduction: the graph for support {k..n} is the
  // previous one with node k-1 reduced away (order of removals does not
  // matter). Labels already removed as linkers are simply skipped.
  Graph cur = proper_g;
  std::pair<int, AttackTree> hit{0, {}};
  int hits = 0;
  for (int k = 1; k <= n; ++k) {
    if (k > 1 && cur.has_node(k - 1)) cur = reduce_by_node(cur, k - 1);
    AttackTree tree = tree_from_reduced(cur, b);
    bool ok = eval_F(cg, tree, b[k]) <= 1.0;
    if (ok && k > 1) ok = eval_F(cg, tree, b[k - 1]) > 1.0;
    if (ok) {
      if (hits == 0) hit = {k, std::move(tree)};
      ++hits;
      if (!scan_all) return hit;
    }
  }
  if (hits == 0)
    raise(Errc::no_mixed_support,
          "no support {k..n} satisfies the equilibrium condition");
  if (hits > 1)
    raise(Errc::no_mixed_support,
          "support condition satisfied by " + std::to_string(hits) +
              " values of k; expected exactly one");
  return hit;
}

double solve_attacker_utility(const CanonicalGame& cg, const AttackTree& tree,
                              int kstar, bool force_bisection) {
  const GameInstance& g = cg.game;
  const double hi = g.b[kstar];
  const double lo_bound = kstar > 1 ? g.b[kstar - 1] : 0.0;

  bool quadratic_support = true;
  for (int j : tree.support)
    if (!g.costs[j].is_quadratic()) quadratic_support = false;

  double utility;
  if (quadratic_support && !force_bisection) {
    // Multiplying F(U) = 1 through by U gives A U^2 - B U - C = 0 with the
    // coefficients below; A > 0 and C >= 0 leave exactly one positive root.
    double a = 0.0, b_coef = -1.0, c_coef = 0.0;
    for (int j : tree.support) {
      const int k = tree.parent[j];
      const double gamma = g.costs[j].gamma();
      if (k == 0) {
        a += gamma / (g.b[j] * g.d[j]);
        b_coef += gamma / g.d[j];
      } else {
        c_coef += g.b[k] * gamma * (1.0 - g.b[k] / g.b[j]) / g.d[j];
      }
    }
    utility =
        (b_coef + std::sqrt(b_coef * b_coef + 4.0 * a * c_coef)) / (2.0 * a);
  } else {
    double lo = std::max(lo_bound, 1e-12 * g.b[g.n]);
    double cur_hi = hi;
    if (!(eval_F(cg, tree, lo) > 1.0 && eval_F(cg, tree, cur_hi) <= 1.0))
      raise(Errc::bracket_failure,
            "root of F - 1 is not bracketed by (b_{k*-1}, b_{k*}]");
    while (cur_hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + cur_hi);
      if (eval_F(cg, tree, mid) > 1.0)
        lo = mid;
      else
        cur_hi = mid;
    }
    utility = 0.5 * (lo + cur_hi);
  }

  // Snap roundoff spill back onto the closed right endpoint.
  if (utility > hi && utility <= hi * (1.0 + 1e-13)) utility = hi;

  if (!(utility <= hi * (1.0 + 1e-9)) ||
      (kstar > 1 && !(utility >= lo_bound * (1.0 - 1e-9))) ||
      !(utility > 0.0))
    raise(Errc::bracket_failure,
          "computed utility " + std::to_string(utility) +
              " falls outside (b_{k*-1}, b_{k*}]");
  return utility;
}

TreeEquilibrium compute_tree_strategies(const CanonicalGame& cg,
                                        const AttackTree& tree,
                                        double utility) {
  const GameInstance& g = cg.game;
  TreeEquilibrium te;
  te.utility = utility;
  te.x.assign(g.n + 1, 0.0);
  te.q.assign(g.n + 1, 0.0);
  te.kstar = tree.support.front();

  double total = 0.0;
  for (int j : tree.support) {
    const int k = tree.parent[j];
    double x = k == 0 ? 1.0 - utility / g.b[j] : 1.0 - g.b[k] / g.b[j];
    if (x < 0.0) {
      if (x < -1e-12)
        raise(Errc::domain_error,
              "negative investment for node " + std::to_string(j));
      x = 0.0;
    }
    te.x[j] = x;
    te.q[j] = k == 0 ? g.costs[j].deriv(x) / g.d[j]
                     : g.b[k] * g.costs[j].deriv(x) / (utility * g.d[j]);
    total += te.q[j];
  }
  if (std::abs(total - 1.0) > 1e-9)
    raise(Errc::normalization_failure,
          "attack probabilities sum to " + std::to_string(total));
  return te;
}

MixedEquilibrium reconstruct_equilibrium(const CanonicalGame& cg,
                                         const Graph& original_graph,
                                         const AttackTree& tree,
                                         const TreeEquilibrium& te) {
  const int n = cg.game.n;
  const std::vector<int>& support = tree.support;

  // Connecting paths are shared between targets whose tree paths overlap,
  // so expand each tree edge once.
  std::map<std::pair<int, int>, std::vector<int>> segment;
  auto expand = [&](int from, int to,
                    const std::vector<int>& extra) -> std::vector<int> {
    if (extra.empty()) {
      auto it = segment.find({from, to});
      if (it != segment.end()) return it->second;
    }
    std::vector<int> block = support;
    block.insert(block.end(), extra.begin(), extra.end());
    std::vector<int> seg = connecting_path(original_graph, block, from, to);
    if (extra.empty()) segment[{from, to}] = seg;
    return seg;
  };

  auto assemble = [&](int target) -> std::vector<int> {
    const std::vector<int> tree_path = tree.root_path(target);
    std::vector<int> path{0};
    for (std::size_t i = 1; i < tree_path.size(); ++i) {
      std::vector<int> seg = expand(tree_path[i - 1], tree_path[i], {});
      path.insert(path.end(), seg.begin() + 1, seg.end());
    }
    std::set<int> distinct(path.begin(), path.end());
    if (distinct.size() == path.size()) return path;

    // Segments collided on a shared neutral interior; rebuild the path
    // excluding interiors already spent on earlier segments.
    path.assign(1, 0);
    std::vector<int> used;
    for (std::size_t i = 1; i < tree_path.size(); ++i) {
      std::vector<int> seg =
          expand(tree_path[i - 1], tree_path[i], used);
      for (std::size_t t = 1; t + 1 < seg.size(); ++t) used.push_back(seg[t]);
      path.insert(path.end(), seg.begin() + 1, seg.end());
    }
    distinct.clear();
    distinct.insert(path.begin(), path.end());
    if (distinct.size() != path.size())
      raise(Errc::no_such_path,
            "could not untangle the attack path to node " +
                std::to_string(target));
    return path;
  };

  MixedEquilibrium eq;
  eq.utility = te.utility;
  eq.defense.assign(n + 1, 0.0);
  eq.tree.parent.assign(n + 1, -1);
  for (int j : support) {
    std::vector<int> path = assemble(j);
    for (int& v : path)
      if (v != 0) v = cg.to_original[v];
    eq.attacker.emplace_back(std::move(path), te.q[j]);

    const int oj = cg.to_original[j];
    eq.defense[oj] = te.x[j];
    eq.support.push_back(oj);
    eq.tree.parent[oj] =
        tree.parent[j] == 0 ? 0 : cg.to_original[tree.parent[j]];
  }
  std::sort(eq.support.begin(), eq.support.end());
  eq.tree.support = eq.support;
  std::sort(eq.attacker.begin(), eq.attacker.end(),
            [](const auto& lhs, const auto& rhs) {
              return lhs.first.back() < rhs.first.back();
            });
  return eq;
}

SolveResult solve(const GameInstance& game) {
  validate(game);
  CanonicalGame cg = canonicalize(game);
  if (auto pure = check_pure_ne(cg)) return *pure;
  auto [proper, trace] = properize(cg.game.graph, cg.game.b);
  auto [kstar, tree] = find_kstar(cg, proper);
  const double utility = solve_attacker_utility(cg, tree, kstar);
  TreeEquilibrium te = compute_tree_strategies(cg, tree, utility);
  return reconstruct_equilibrium(cg, cg.game.graph, tree, te);
}

}  // namespace netgame
