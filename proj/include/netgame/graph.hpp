#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace netgame {

/// Undirected graph on a fixed label range {0,...,max_label}. Node 0 is the
/// attacker and can never be removed. Nodes may be absent (removed by a
/// reduction); adjacency lists are kept sorted ascending so every traversal
/// is deterministic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int max_label);

  static Graph from_edges(int max_label,
                          const std::vector<std::pair<int, int>>& edges);

  int max_label() const { return static_cast<int>(adj_.size()) - 1; }
  bool has_node(int v) const;
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  std::vector<int> nodes() const;
  std::size_t num_nodes() const;
  std::size_t num_edges() const;
  /// All edges as (u,v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

  void add_edge(int u, int v);
  void remove_node(int v);

  bool operator==(const Graph&) const = default;

 private:
  std::vector<bool> present_;
  std::vector<std::vector<int>> adj_;
};

/// Log of node removals; `neighbors` is the neighbor set at removal time,
/// so replaying the removals on the original graph reproduces the reduced
/// graph edge for edge.
struct ReductionTrace {
  struct Removal {
    int node;
    std::vector<int> neighbors;
  };
  std::vector<Removal> removed;
};

bool is_connected(const Graph& g);

/// Shortest path src -> dst avoiding blocked nodes (breadth-first, neighbors
/// scanned in ascending label order). `blocked` is indexed by label; src and
/// dst are never treated as blocked.
std::optional<std::vector<int>> bfs_path(const Graph& g, int src, int dst,
                                         const std::vector<bool>& blocked);

/// Remove m and connect every pair of its former neighbors, preserving all
/// attack routes that passed through m.
Graph reduce_by_node(const Graph& g, int m);

/// Reduce by every node of s, ascending label order. The result does not
/// depend on the order of removals.
std::pair<Graph, ReductionTrace> reduce_by_set(const Graph& g,
                                               std::vector<int> s);

/// Linkers: nodes with no edge to the attacker whose neighbors all carry a
/// strictly higher valuation. b is indexed by label (b[0] unused).
std::vector<int> find_linkers(const Graph& g, const std::vector<double>& b);

/// Repeatedly remove linkers until none remain. In the result every node is
/// reachable from the attacker along a path of strictly ascending valuations.
std::pair<Graph, ReductionTrace> properize(const Graph& g,
                                           const std::vector<double>& b);

/// Shortest path from i to j whose interior avoids d_set and the attacker.
/// Throws no_such_path when i and j are separated after the deletion.
std::vector<int> connecting_path(const Graph& g, const std::vector<int>& d_set,
                                 int i, int j);

/// Splice node m out of path p (identity when m is not on p).
std::vector<int> project_path(const std::vector<int>& p, int m);

}  // namespace netgame
