#include "netgame/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "netgame/errors.hpp"

namespace netgame {

namespace {

void insert_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

Graph::Graph(int max_label)
    : present_(max_label + 1, true), adj_(max_label + 1) {}

Graph Graph::from_edges(int max_label,
                        const std::vector<std::pair<int, int>>& edges) {
  Graph g(max_label);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool Graph::has_node(int v) const {
  return v >= 0 && v < static_cast<int>(present_.size()) && present_[v];
}

bool Graph::has_edge(int u, int v) const {
  if (!has_node(u) || !has_node(v)) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (!has_node(v))
    raise(Errc::node_absent, "node " + std::to_string(v) + " not in graph");
  return adj_[v];
}

std::vector<int> Graph::nodes() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(present_.size()); ++v)
    if (present_[v]) out.push_back(v);
  return out;
}

std::size_t Graph::num_nodes() const {
  return static_cast<std::size_t>(
      std::count(present_.begin(), present_.end(), true));
}

std::size_t Graph::num_edges() const {
  std::size_t total = 0;
  for (const auto& nbrs : adj_) total += nbrs.size();
  return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < static_cast<int>(adj_.size()); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::add_edge(int u, int v) {
  if (u == v)
    raise(Errc::structural_mismatch, "self-loop at node " + std::to_string(u));
  if (!has_node(u) || !has_node(v))
    raise(Errc::node_absent, "edge endpoint outside the graph: {" +
                                 std::to_string(u) + "," + std::to_string(v) +
                                 "}");
  insert_sorted(adj_[u], v);
  insert_sorted(adj_[v], u);
}

void Graph::remove_node(int v) {
  if (!has_node(v))
    raise(Errc::node_absent, "node " + std::to_string(v) + " not in graph");
  for (int nb : adj_[v]) erase_sorted(adj_[nb], v);
  adj_[v].clear();
  present_[v] = false;
}

bool is_connected(const Graph& g) {
  if (!g.has_node(0)) return false;
  std::vector<bool> seen(g.max_label() + 1, false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == g.num_nodes();
}

std::optional<std::vector<int>> bfs_path(const Graph& g, int src, int dst,
                                         const std::vector<bool>& blocked) {
  auto is_blocked = [&](int v) {
    return v != src && v != dst && v < static_cast<int>(blocked.size()) &&
           blocked[v];
  };
  if (!g.has_node(src) || !g.has_node(dst)) return std::nullopt;
  if (src == dst) return std::vector<int>{src};

  std::vector<int> pred(g.max_label() + 1, -1);
  std::vector<bool> seen(g.max_label() + 1, false);
  std::deque<int> queue{src};
  seen[src] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (seen[v] || is_blocked(v)) continue;
      seen[v] = true;
      pred[v] = u;
      if (v == dst) {
        std::vector<int> path{dst};
        for (int w = pred[dst]; w != -1; w = pred[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

Graph reduce_by_node(const Graph& g, int m) {
  if (m == 0)
    raise(Errc::cannot_remove_attacker, "node 0 cannot be reduced away");
  if (!g.has_node(m))
    raise(Errc::node_absent, "node " + std::to_string(m) + " not in graph");
  Graph r = g;
  const std::vector<int> nbrs = g.neighbors(m);
  r.remove_node(m);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!r.has_edge(nbrs[i], nbrs[j])) r.add_edge(nbrs[i], nbrs[j]);
  return r;
}

std::pair<Graph, ReductionTrace> reduce_by_set(const Graph& g,
                                               std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  Graph cur = g;
  ReductionTrace trace;
  for (int m : s) {
    trace.removed.push_back({m, cur.neighbors(m)});
    cur = reduce_by_node(cur, m);
  }
  return {std::move(cur), std::move(trace)};
}

std::vector<int> find_linkers(const Graph& g, const std::vector<double>& b) {
  std::vector<int> linkers;
  for (int v : g.nodes()) {
    if (v == 0 || g.has_edge(0, v)) continue;
    bool all_higher = true;
    for (int nb : g.neighbors(v)) {
      if (nb == 0 || b[nb] <= b[v]) {
        all_higher = false;
        break;
      }
    }
    if (all_higher) linkers.push_back(v);
  }
  return linkers;
}

std::pair<Graph, ReductionTrace> properize(const Graph& g,
                                           const std::vector<double>& b) {
  Graph cur = g;
  ReductionTrace trace;
  // A single sweep can expose new linkers, so iterate to a fixpoint; each
  // pass removes at least one node, bounding the loop by the node count.
  while (true) {
    std::vector<int> linkers = find_linkers(cur, b);
    if (linkers.empty()) break;
    auto [next, pass_trace] = reduce_by_set(cur, linkers);
    cur = std::move(next);
    for (auto& removal : pass_trace.removed)
      trace.removed.push_back(std::move(removal));
  }
  return {std::move(cur), std::move(trace)};
}

std::vector<int> connecting_path(const Graph& g, const std::vector<int>& d_set,
                                 int i, int j) {
  std::vector<bool> blocked(g.max_label() + 1, false);
  blocked[0] = true;
  for (int v : d_set)
    if (v >= 0 && v <= g.max_label()) blocked[v] = true;
  auto path = bfs_path(g, i, j, blocked);
  if (!path)
    raise(Errc::no_such_path, "no path from " + std::to_string(i) + " to " +
                                  std::to_string(j) +
                                  " avoiding the blocked set");
  return *path;
}

std::vector<int> project_path(const std::vector<int>& p, int m) {
  std::vector<int> out;
  out.reserve(p.size());
  for (int v : p)
    if (v != m) out.push_back(v);
  return out;
}

}  // namespace netgame
