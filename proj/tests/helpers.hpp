#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "netgame/engine.hpp"
#include "netgame/errors.hpp"
#include "netgame/game.hpp"
#include "netgame/graph.hpp"

namespace netgame::test {

// Five-node fixture used across the suites: attacker reaches {2,3,4} only
// through node 2; node 1 is a low-value cut node between 2 and 4.
inline std::vector<std::pair<int, int>> ex1_edges() {
  return {{0, 2}, {1, 2}, {1, 4}, {2, 3}, {3, 4}};
}

inline GameInstance ex1_instance() {
  return make_quadratic_game(4, ex1_edges(), {1.0, 2.0, 3.0, 4.0},
                             {1.0, 1.0, 1.0, 1.0});
}

inline GameInstance star_instance() {
  return make_quadratic_game(2, {{0, 1}, {0, 2}}, {1.0, 2.0}, {0.3, 0.4});
}

inline GameInstance line_instance() {
  return make_quadratic_game(2, {{0, 1}, {1, 2}}, {1.0, 2.0}, {1.0, 1.0});
}

inline std::optional<Errc> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Relabel defenders: perm[j] is the new label of original defender j.
inline GameInstance permute_instance(const GameInstance& g,
                                     const std::vector<int>& perm) {
  GameInstance out;
  out.n = g.n;
  out.graph = Graph(g.n);
  auto map = [&](int v) { return v == 0 ? 0 : perm[v]; };
  for (const auto& [u, v] : g.graph.edges())
    out.graph.add_edge(map(u), map(v));
  out.b.assign(g.n + 1, 0.0);
  out.d.assign(g.n + 1, 0.0);
  out.costs.assign(g.n + 1, CostFunction::quadratic(1.0));
  for (int j = 1; j <= g.n; ++j) {
    out.b[perm[j]] = g.b[j];
    out.d[perm[j]] = g.d[j];
    out.costs[perm[j]] = g.costs[j];
  }
  return out;
}

// Game-level reduction by node m: completion edges among m's neighbors,
// labels above m shifted down. Returns the reduced game and the map from
// original surviving labels to reduced labels.
inline std::pair<GameInstance, std::vector<int>> reduce_instance(
    const GameInstance& g, int m) {
  Graph reduced_graph = reduce_by_node(g.graph, m);
  std::vector<int> to_reduced(g.n + 1, 0);
  for (int j = 1; j <= g.n; ++j)
    to_reduced[j] = j < m ? j : (j == m ? -1 : j - 1);

  GameInstance out;
  out.n = g.n - 1;
  out.graph = Graph(out.n);
  for (const auto& [u, v] : reduced_graph.edges())
    out.graph.add_edge(u == 0 ? 0 : to_reduced[u],
                       v == 0 ? 0 : to_reduced[v]);
  out.b.assign(out.n + 1, 0.0);
  out.d.assign(out.n + 1, 0.0);
  out.costs.assign(out.n + 1, CostFunction::quadratic(1.0));
  for (int j = 1; j <= g.n; ++j) {
    if (j == m) continue;
    out.b[to_reduced[j]] = g.b[j];
    out.d[to_reduced[j]] = g.d[j];
    out.costs[to_reduced[j]] = g.costs[j];
  }
  return {out, to_reduced};
}

// Every node reachable from 0 along strictly ascending valuations?
inline bool ascending_path_property(const Graph& g,
                                    const std::vector<double>& b) {
  std::vector<bool> reach(g.max_label() + 1, false);
  reach[0] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int u : g.nodes()) {
      if (!reach[u]) continue;
      for (int v : g.neighbors(u)) {
        if (reach[v]) continue;
        if (u == 0 || b[v] > b[u]) {
          reach[v] = true;
          grew = true;
        }
      }
    }
  }
  for (int v : g.nodes())
    if (!reach[v]) return false;
  return true;
}

}  // namespace netgame::test
