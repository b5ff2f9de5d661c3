#include "netgame/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netgame/errors.hpp"
#include "netgame/rng.hpp"
#include "netgame/verify.hpp"

namespace netgame {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::parse_error, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::parse_error, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::parse_error, "cannot open file for writing: " + path);
  out << text;
}

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!j.is_object()) raise(Errc::parse_error, where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      raise(Errc::parse_error, where + ": unknown field \"" + key + "\"");
}

std::vector<double> number_list(const json& j, int expected,
                                const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected)
    raise(Errc::parse_error, field + ": expected a list of " +
                                 std::to_string(expected) + " numbers");
  std::vector<double> out;
  for (const auto& item : j) {
    if (!item.is_number())
      raise(Errc::parse_error, field + ": entries must be numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

std::vector<int> int_list(const json& j, const std::string& field) {
  if (!j.is_array())
    raise(Errc::parse_error, field + ": expected a list of integers");
  std::vector<int> out;
  for (const auto& item : j) {
    if (!item.is_number_integer())
      raise(Errc::parse_error, field + ": entries must be integers");
    out.push_back(item.get<int>());
  }
  return out;
}

}  // namespace

GameInstance parse_game(const std::string& text) {
  const json doc = parse_json(text);
  require_keys(doc, {"n", "edges", "b", "d", "cost"}, "game document");
  for (const char* field : {"n", "edges", "b", "d"})
    if (!doc.contains(field))
      raise(Errc::parse_error,
            std::string("game document: missing field \"") + field + "\"");

  if (!doc["n"].is_number_integer())
    raise(Errc::parse_error, "n: expected an integer");
  const int n = doc["n"].get<int>();
  if (n < 1) raise(Errc::parse_error, "n: must be at least 1");

  if (!doc["edges"].is_array())
    raise(Errc::parse_error, "edges: expected a list of pairs");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : doc["edges"]) {
    std::vector<int> pair = int_list(e, "edges");
    if (pair.size() != 2)
      raise(Errc::parse_error, "edges: each entry must be a pair");
    for (int v : pair)
      if (v < 0 || v > n)
        raise(Errc::parse_error,
              "edges: label " + std::to_string(v) + " outside 0.." +
                  std::to_string(n));
    if (pair[0] == pair[1])
      raise(Errc::parse_error,
            "edges: self-loop at node " + std::to_string(pair[0]));
    edges.emplace_back(pair[0], pair[1]);
  }

  const std::vector<double> b = number_list(doc["b"], n, "b");
  const std::vector<double> d = number_list(doc["d"], n, "d");

  std::vector<double> gamma(n, 1.0);
  if (doc.contains("cost")) {
    const json& cost = doc["cost"];
    if (cost.is_number())
      gamma.assign(n, cost.get<double>());
    else
      gamma = number_list(cost, n, "cost");
  }

  GameInstance g;
  g.n = n;
  g.graph = Graph(n);
  for (const auto& [u, v] : edges)
    if (!g.graph.has_edge(u, v)) g.graph.add_edge(u, v);
  g.b.assign(n + 1, 0.0);
  g.d.assign(n + 1, 0.0);
  g.costs.assign(n + 1, CostFunction::quadratic(1.0));
  for (int j = 1; j <= n; ++j) {
    g.b[j] = b[j - 1];
    g.d[j] = d[j - 1];
    g.costs[j] = CostFunction::quadratic(gamma[j - 1]);
  }
  validate(g);
  return g;
}

GameInstance parse_game_file(const std::string& path) {
  return parse_game(read_file(path));
}

std::string serialize_game(const GameInstance& g) {
  json doc;
  doc["n"] = g.n;
  json edges = json::array();
  for (const auto& [u, v] : g.graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  json b = json::array(), d = json::array(), gamma = json::array();
  bool uniform = true;
  for (int j = 1; j <= g.n; ++j) {
    if (!g.costs[j].is_quadratic())
      raise(Errc::invalid_flag, "only quadratic costs are serializable");
    b.push_back(g.b[j]);
    d.push_back(g.d[j]);
    gamma.push_back(g.costs[j].gamma());
    if (g.costs[j].gamma() != g.costs[1].gamma()) uniform = false;
  }
  doc["b"] = std::move(b);
  doc["d"] = std::move(d);
  if (uniform)
    doc["cost"] = g.costs[1].gamma();
  else
    doc["cost"] = std::move(gamma);
  return doc.dump(2);
}

EquilibriumDoc make_doc(const SolveResult& result, int n) {
  EquilibriumDoc doc;
  doc.defense.assign(n, 0.0);
  if (const auto* pure = std::get_if<PureEquilibrium>(&result)) {
    doc.pure = true;
    doc.utility = pure->utility;
    doc.support = {pure->target};
    doc.defense[pure->target - 1] = pure->investment;
    doc.attacker.emplace_back(pure->path, 1.0);
    doc.tree.emplace_back(pure->target, 0);
    return doc;
  }
  const auto& mixed = std::get<MixedEquilibrium>(result);
  doc.utility = mixed.utility;
  doc.support = mixed.support;
  for (int j = 1; j <= n; ++j) doc.defense[j - 1] = mixed.defense[j];
  doc.attacker = mixed.attacker;
  for (int j : mixed.tree.support)
    doc.tree.emplace_back(j, mixed.tree.parent[j]);
  return doc;
}

std::string serialize_equilibrium(const EquilibriumDoc& doc) {
  json out;
  out["type"] = doc.pure ? "pure" : "mixed";
  out["utility"] = doc.utility;
  out["support"] = doc.support;
  out["defense"] = doc.defense;
  json attacker = json::array();
  for (const auto& [path, prob] : doc.attacker)
    attacker.push_back({{"path", path}, {"prob", prob}});
  out["attacker"] = std::move(attacker);
  json tree = json::array();
  for (const auto& [node, parent] : doc.tree) tree.push_back({node, parent});
  out["tree"] = std::move(tree);
  return out.dump(2);
}

EquilibriumDoc parse_equilibrium(const std::string& text) {
  const json in = parse_json(text);
  require_keys(in, {"type", "utility", "support", "defense", "attacker",
                    "tree"},
               "equilibrium document");
  for (const char* field :
       {"type", "utility", "support", "defense", "attacker"})
    if (!in.contains(field))
      raise(Errc::parse_error,
            std::string("equilibrium document: missing field \"") + field +
                "\"");

  EquilibriumDoc doc;
  if (!in["type"].is_string())
    raise(Errc::parse_error, "type: expected \"pure\" or \"mixed\"");
  const std::string type = in["type"].get<std::string>();
  if (type != "pure" && type != "mixed")
    raise(Errc::parse_error, "type: expected \"pure\" or \"mixed\"");
  doc.pure = type == "pure";

  if (!in["utility"].is_number())
    raise(Errc::parse_error, "utility: expected a number");
  doc.utility = in["utility"].get<double>();
  doc.support = int_list(in["support"], "support");
  if (!in["defense"].is_array())
    raise(Errc::parse_error, "defense: expected a list of numbers");
  doc.defense = number_list(in["defense"],
                            static_cast<int>(in["defense"].size()), "defense");

  if (!in["attacker"].is_array())
    raise(Errc::parse_error, "attacker: expected a list");
  for (const auto& entry : in["attacker"]) {
    require_keys(entry, {"path", "prob"}, "attacker entry");
    if (!entry.contains("path") || !entry.contains("prob") ||
        !entry["prob"].is_number())
      raise(Errc::parse_error, "attacker: entries need a path and a prob");
    doc.attacker.emplace_back(int_list(entry["path"], "attacker path"),
                              entry["prob"].get<double>());
  }

  if (in.contains("tree")) {
    for (const auto& e : in["tree"]) {
      std::vector<int> pair = int_list(e, "tree");
      if (pair.size() != 2)
        raise(Errc::parse_error, "tree: entries must be (node, parent) pairs");
      doc.tree.emplace_back(pair[0], pair[1]);
    }
  }
  return doc;
}

EquilibriumDoc parse_equilibrium_file(const std::string& path) {
  return parse_equilibrium(read_file(path));
}

MixedEquilibrium doc_profile(const EquilibriumDoc& doc) {
  const int n = static_cast<int>(doc.defense.size());
  MixedEquilibrium eq;
  eq.utility = doc.utility;
  eq.support = doc.support;
  std::sort(eq.support.begin(), eq.support.end());
  eq.defense.assign(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) eq.defense[j] = doc.defense[j - 1];
  eq.attacker = doc.attacker;
  eq.tree.support = eq.support;
  eq.tree.parent.assign(n + 1, -1);
  for (const auto& [node, parent] : doc.tree)
    if (node >= 1 && node <= n) eq.tree.parent[node] = parent;
  return eq;
}

std::string to_dot(const EquilibriumDoc& doc, const GameInstance& game) {
  std::ostringstream out;
  out << "digraph attack_tree {\n";
  out << "  0 [label=\"0 (attacker)\"];\n";
  std::vector<int> nodes = doc.support;
  std::sort(nodes.begin(), nodes.end());
  char buf[64];
  for (int j : nodes) {
    std::snprintf(buf, sizeof buf, "%g", game.b[j]);
    out << "  " << j << " [label=\"" << j << " (b=" << buf << ")\"];\n";
  }
  std::vector<std::pair<int, int>> edges = doc.tree;
  std::sort(edges.begin(), edges.end());
  for (const auto& [node, parent] : edges)
    out << "  " << parent << " -> " << node << ";\n";
  out << "}\n";
  return out.str();
}

GameInstance generate_instance(int nodes, double edge_prob, std::uint64_t seed,
                               bool sort_b) {
  if (nodes < 1) raise(Errc::invalid_flag, "node count must be at least 1");
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    raise(Errc::invalid_flag, "edge probability must be in (0, 1]");

  std::mt19937_64 rng(seed);
  Graph graph(nodes);
  for (int u = 0; u <= nodes; ++u)
    for (int v = u + 1; v <= nodes; ++v)
      if (uniform01(rng) < edge_prob) graph.add_edge(u, v);

  // Repair connectivity: every node outside the component of the attacker
  // gets one edge to a uniformly random already-reached node.
  std::vector<bool> reached(nodes + 1, false);
  std::vector<int> reached_list{0};
  reached[0] = true;
  for (std::size_t i = 0; i < reached_list.size(); ++i)
    for (int v : graph.neighbors(reached_list[i]))
      if (!reached[v]) {
        reached[v] = true;
        reached_list.push_back(v);
      }
  std::sort(reached_list.begin(), reached_list.end());
  for (int v = 1; v <= nodes; ++v) {
    if (reached[v]) continue;
    const auto pick = static_cast<std::size_t>(
        uniform01(rng) * static_cast<double>(reached_list.size()));
    const int anchor = reached_list[std::min(pick, reached_list.size() - 1)];
    graph.add_edge(v, anchor);
    reached[v] = true;
    reached_list.insert(
        std::lower_bound(reached_list.begin(), reached_list.end(), v), v);
  }

  std::vector<double> b(nodes);
  for (int attempt = 0;; ++attempt) {
    for (double& value : b) value = uniform01(rng);
    std::sort(b.begin(), b.end());
    const bool distinct =
        b.front() > 0.0 &&
        std::adjacent_find(b.begin(), b.end()) == b.end();
    if (distinct) break;
    if (attempt > 100)
      raise(Errc::invalid_flag, "could not draw distinct valuations");
  }
  if (!sort_b) {
    for (int i = nodes - 1; i > 0; --i) {
      const auto j = static_cast<int>(uniform01(rng) * (i + 1));
      std::swap(b[i], b[std::min(j, i)]);
    }
  }

  std::vector<double> d(nodes);
  for (double& value : d) value = 1.0 - uniform01(rng);  // (0, 1]

  GameInstance g;
  g.n = nodes;
  g.graph = std::move(graph);
  g.b.assign(nodes + 1, 0.0);
  g.d.assign(nodes + 1, 0.0);
  g.costs.assign(nodes + 1, CostFunction::quadratic(1.0));
  for (int j = 1; j <= nodes; ++j) {
    g.b[j] = b[j - 1];
    g.d[j] = d[j - 1];
  }
  validate(g);
  return g;
}

namespace {

int exit_code_for(const Error& e, bool during_load) {
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::disconnected_graph:
    case Errc::duplicate_valuation:
    case Errc::invalid_cost:
    case Errc::non_positive_parameter:
      // Validation-time failures are inputs the gate rejected; the same
      // conditions surfacing later mean an assumption broke mid-solve.
      return during_load ? 2 : 3;
    case Errc::invalid_flag:
      return 2;
    default:
      return 5;
  }
}

double default_tolerance(const GameInstance& g) {
  return g.all_quadratic() ? 1e-9 : 1e-7;
}

void print_report(const VerificationReport& report, std::ostream& out) {
  out << "is_epsilon_ne: " << (report.is_epsilon_ne ? "true" : "false")
      << "\n";
  out << "epsilon_used: " << report.epsilon_used << "\n";
  out << "attacker_gap: " << report.attacker_gap << "\n";
  out << "support_gap: " << report.support_gap << "\n";
  out << "max_defender_gap: " << report.max_defender_gap() << "\n";
  out << "normalization_gap: " << report.normalization_gap << "\n";
}

}  // namespace

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  GameInstance game;
  try {
    game = parse_game_file(opts.input);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e, true);
  }

  EquilibriumDoc doc;
  try {
    doc = make_doc(solve(game), game.n);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e, false);
  }

  if (opts.verify) {
    const double tol =
        opts.tolerance > 0.0 ? opts.tolerance : default_tolerance(game);
    VerificationReport report;
    try {
      report = verify_equilibrium(game, doc_profile(doc), tol);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return 5;
    }
    if (!report.is_epsilon_ne) {
      err << "verification failed at tolerance " << tol << "\n";
      print_report(report, err);
      return 4;
    }
  }

  try {
    if (!opts.dot_file.empty()) write_file(opts.dot_file, to_dot(doc, game));
    const std::string text = serialize_equilibrium(doc);
    if (opts.output_file.empty())
      out << text << "\n";
    else
      write_file(opts.output_file, text + "\n");
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 5;
  }
  return 0;
}

int run_verify(const VerifyOptions& opts, std::ostream& out,
               std::ostream& err) {
  GameInstance game;
  EquilibriumDoc doc;
  try {
    game = parse_game_file(opts.game_file);
    doc = parse_equilibrium_file(opts.eq_file);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }

  const double tol =
      opts.tolerance > 0.0 ? opts.tolerance : default_tolerance(game);
  try {
    const VerificationReport report =
        verify_equilibrium(game, doc_profile(doc), tol);
    print_report(report, out);
    return report.is_epsilon_ne ? 0 : 4;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 4;
  }
}

int run_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const GameInstance g =
        generate_instance(opts.nodes, opts.edge_prob, opts.seed, opts.sort_b);
    out << serialize_game(g) << "\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace netgame
