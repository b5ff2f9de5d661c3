#include "netgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netgame/errors.hpp"

namespace netgame {

bool GameInstance::all_quadratic() const {
  for (int j = 1; j <= n; ++j)
    if (!costs[j].is_quadratic()) return false;
  return true;
}

GameInstance make_quadratic_game(int n,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<double>& b,
                                 const std::vector<double>& d, double gamma) {
  GameInstance g;
  g.n = n;
  g.graph = Graph::from_edges(n, edges);
  g.b.assign(n + 1, 0.0);
  g.d.assign(n + 1, 0.0);
  g.costs.assign(n + 1, CostFunction::quadratic(gamma));
  for (int j = 1; j <= n; ++j) {
    g.b[j] = b[j - 1];
    g.d[j] = d[j - 1];
  }
  return g;
}

namespace {

// Contract probes for a cost function. Quadratic costs satisfy the contract
// by algebra whenever gamma > 0; custom ones are spot-checked pointwise.
void check_cost(const CostFunction& c, double d, int label) {
  const std::string who = "defender " + std::to_string(label);
  if (c.is_quadratic()) {
    if (!(c.gamma() > 0.0) || !std::isfinite(c.gamma()))
      raise(Errc::invalid_cost, who + ": quadratic coefficient must be > 0");
    if (c.deriv(1.0) < d)
      raise(Errc::invalid_cost,
            who + ": marginal cost at full protection is below the loss d");
    return;
  }
  if (std::abs(c.deriv(0.0)) > 1e-12)
    raise(Errc::invalid_cost, who + ": marginal cost at 0 must vanish");
  const double top = c.deriv(1.0);
  if (!std::isfinite(top))
    raise(Errc::invalid_cost, who + ": marginal cost at 1 must be finite");
  if (top < d)
    raise(Errc::invalid_cost,
          who + ": marginal cost at full protection is below the loss d");
  double prev = c.deriv(0.0);
  for (double x : {0.25, 0.5, 0.75, 1.0}) {
    const double dx = c.deriv(x);
    if (!(dx > prev))
      raise(Errc::invalid_cost, who + ": marginal cost is not increasing");
    if (std::abs(c.deriv_inverse(dx) - x) > 1e-12)
      raise(Errc::invalid_cost,
            who + ": derivative inverse round-trip fails at x=" +
                std::to_string(x));
    prev = dx;
  }
}

}  // namespace

const GameInstance& validate(const GameInstance& g) {
  if (g.n < 1)
    raise(Errc::non_positive_parameter, "defender count must be positive");
  const int size = g.n + 1;
  if (static_cast<int>(g.b.size()) != size ||
      static_cast<int>(g.d.size()) != size ||
      static_cast<int>(g.costs.size()) != size || g.graph.max_label() != g.n)
    raise(Errc::structural_mismatch,
          "instance vectors and graph must cover labels 0.." +
              std::to_string(g.n));
  for (int j = 0; j <= g.n; ++j)
    if (!g.graph.has_node(j))
      raise(Errc::structural_mismatch,
            "node " + std::to_string(j) + " missing from the graph");

  for (int j = 1; j <= g.n; ++j) {
    if (!(g.b[j] > 0.0) || !std::isfinite(g.b[j]))
      raise(Errc::non_positive_parameter,
            "b[" + std::to_string(j) + "] must be a positive real");
    if (!(g.d[j] > 0.0) || !std::isfinite(g.d[j]))
      raise(Errc::non_positive_parameter,
            "d[" + std::to_string(j) + "] must be a positive real");
  }

  // Valuations must be pairwise distinct; equality is checked bit-exactly
  // and rejected rather than perturbed.
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return g.b[i] < g.b[j]; });
  for (int i = 0; i + 1 < g.n; ++i)
    if (g.b[order[i]] == g.b[order[i + 1]])
      raise(Errc::duplicate_valuation,
            "defenders " + std::to_string(order[i]) + " and " +
                std::to_string(order[i + 1]) +
                " share the attacker valuation " +
                std::to_string(g.b[order[i]]) +
                "; valuations must be pairwise distinct");

  for (int j = 1; j <= g.n; ++j) check_cost(g.costs[j], g.d[j], j);

  if (!is_connected(g.graph))
    raise(Errc::disconnected_graph,
          "some defender is unreachable from the attacker node");
  return g;
}

CanonicalGame canonicalize(const GameInstance& g) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return g.b[i] < g.b[j]; });

  CanonicalGame cg;
  cg.to_original.assign(g.n + 1, 0);
  cg.to_canonical.assign(g.n + 1, 0);
  for (int c = 1; c <= g.n; ++c) {
    cg.to_original[c] = order[c - 1];
    cg.to_canonical[order[c - 1]] = c;
  }

  cg.game.n = g.n;
  cg.game.graph = Graph(g.n);
  for (const auto& [u, v] : g.graph.edges())
    cg.game.graph.add_edge(u == 0 ? 0 : cg.to_canonical[u],
                           v == 0 ? 0 : cg.to_canonical[v]);
  cg.game.b.assign(g.n + 1, 0.0);
  cg.game.d.assign(g.n + 1, 0.0);
  cg.game.costs.assign(g.n + 1, CostFunction::quadratic(1.0));
  for (int c = 1; c <= g.n; ++c) {
    cg.game.b[c] = g.b[cg.to_original[c]];
    cg.game.d[c] = g.d[cg.to_original[c]];
    cg.game.costs[c] = g.costs[cg.to_original[c]];
  }
  return cg;
}

std::optional<PureEquilibrium> check_pure_ne(const CanonicalGame& cg) {
  const GameInstance& g = cg.game;
  const int top = g.n;

  const double investment = g.costs[top].deriv_inverse(g.d[top]);
  const double utility = g.b[top] * (1.0 - investment);

  // Defenders reachable from the attacker once the top node is deleted:
  // each of them can be attacked without crossing the top defender, so the
  // defended top value must still dominate all of them.
  std::vector<bool> blocked(g.n + 1, false);
  blocked[top] = true;
  std::vector<bool> seen(g.n + 1, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : g.graph.neighbors(u)) {
      if (seen[v] || blocked[v]) continue;
      seen[v] = true;
      stack.push_back(v);
    }
  }
  for (int j = 1; j < top; ++j)
    if (seen[j] && utility < g.b[j]) return std::nullopt;

  auto path = bfs_path(g.graph, 0, top, {});
  PureEquilibrium pure;
  pure.target = cg.to_original[top];
  pure.path.reserve(path->size());
  for (int v : *path) pure.path.push_back(v == 0 ? 0 : cg.to_original[v]);
  pure.investment = investment;
  pure.utility = utility;
  return pure;
}

}  // namespace netgame
