#include "netgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "netgame/errors.hpp"
#include "netgame/rng.hpp"

namespace netgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double transit_weight(double x) {
  if (x >= 1.0) return kInf;
  return -std::log1p(-x);
}

// Probability that an attack along `path` reaches its terminal node:
// product of (1-x) over the interior, attacker and target excluded.
double reach_probability(const std::vector<int>& path,
                         const std::vector<double>& x) {
  double alpha = 1.0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) alpha *= 1.0 - x[path[i]];
  return alpha;
}

double path_payoff(const std::vector<int>& path, const std::vector<double>& x,
                   const std::vector<double>& b) {
  const int target = path.back();
  return reach_probability(path, x) * (1.0 - x[target]) * b[target];
}

}  // namespace

double VerificationReport::max_defender_gap() const {
  double worst = 0.0;
  for (double gap : defender_gaps) worst = std::max(worst, gap);
  return worst;
}

BestAttack best_attack_path(const Graph& g, const std::vector<double>& x,
                            const std::vector<double>& b) {
  const int size = g.max_label() + 1;
  std::vector<double> dist(size, kInf);
  std::vector<int> pred(size, -1);
  std::vector<bool> settled(size, false);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[0] = 0.0;
  heap.emplace(0.0, 0);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = true;
    const double wu = u == 0 ? 0.0 : transit_weight(x[u]);
    if (wu == kInf) continue;  // zero transit probability, dead end
    for (int v : g.neighbors(u)) {
      const double cand = du + wu;
      if (cand < dist[v]) {
        dist[v] = cand;
        pred[v] = u;
        heap.emplace(cand, v);
      }
    }
  }

  int best = -1;
  double best_value = -1.0;
  for (int j : g.nodes()) {
    if (j == 0 || dist[j] == kInf) continue;
    const double value = std::exp(-dist[j]) * (1.0 - x[j]) * b[j];
    if (value > best_value) {
      best_value = value;
      best = j;
    }
  }
  if (best == -1)
    raise(Errc::structural_mismatch, "no defender reachable from node 0");

  BestAttack result;
  for (int v = best; v != -1; v = pred[v]) result.path.push_back(v);
  std::reverse(result.path.begin(), result.path.end());
  result.value = path_payoff(result.path, x, b);
  return result;
}

BestAttack best_attack_path_exhaustive(const Graph& g,
                                       const std::vector<double>& x,
                                       const std::vector<double>& b) {
  if (g.num_nodes() > 11)
    raise(Errc::invalid_flag,
          "exhaustive path enumeration is limited to 10 defenders");
  BestAttack best;
  best.value = -1.0;
  std::vector<int> path{0};
  std::vector<bool> on_path(g.max_label() + 1, false);
  on_path[0] = true;

  auto dfs = [&](auto&& self, int u, double alpha) -> void {
    for (int v : g.neighbors(u)) {
      if (on_path[v]) continue;
      path.push_back(v);
      on_path[v] = true;
      const double value = alpha * (1.0 - x[v]) * b[v];
      if (value > best.value) {
        best.value = value;
        best.path = path;
      }
      const double next_alpha = alpha * (1.0 - x[v]);
      if (next_alpha > 0.0) self(self, v, next_alpha);
      on_path[v] = false;
      path.pop_back();
    }
  };
  dfs(dfs, 0, 1.0);
  return best;
}

VerificationReport verify_equilibrium(const GameInstance& game,
                                      const MixedEquilibrium& eq,
                                      double epsilon) {
  const int n = game.n;
  if (static_cast<int>(eq.defense.size()) != n + 1)
    raise(Errc::structural_mismatch, "defense vector must cover labels 1..n");
  for (int j = 1; j <= n; ++j)
    if (!(eq.defense[j] >= 0.0 && eq.defense[j] <= 1.0))
      raise(Errc::structural_mismatch,
            "investment of defender " + std::to_string(j) +
                " outside [0,1]");

  std::set<int> support(eq.support.begin(), eq.support.end());
  for (int j : support)
    if (j < 1 || j > n)
      raise(Errc::structural_mismatch, "support label out of range");

  std::set<int> targets;
  double prob_total = 0.0;
  std::vector<double> attack_mass(n + 1, 0.0);  // sum of pi(p) * alpha(p)
  double support_gap = 0.0;

  for (const auto& [path, prob] : eq.attacker) {
    if (path.size() < 2 || path.front() != 0)
      raise(Errc::structural_mismatch, "attack path must start at node 0");
    std::set<int> distinct(path.begin(), path.end());
    if (distinct.size() != path.size())
      raise(Errc::structural_mismatch, "attack path revisits a node");
    for (std::size_t i = 1; i < path.size(); ++i)
      if (!game.graph.has_edge(path[i - 1], path[i]))
        raise(Errc::structural_mismatch,
              "attack path uses a missing edge {" +
                  std::to_string(path[i - 1]) + "," + std::to_string(path[i]) +
                  "}");
    const int target = path.back();
    if (!support.count(target))
      raise(Errc::structural_mismatch,
            "attack path targets non-support node " + std::to_string(target));
    if (!targets.insert(target).second)
      raise(Errc::structural_mismatch,
            "two attack paths target node " + std::to_string(target));
    if (!(prob >= 0.0) || prob > 1.0 + 1e-9)
      raise(Errc::structural_mismatch, "path probability outside [0,1]");

    prob_total += prob;
    attack_mass[target] += prob * reach_probability(path, eq.defense);
    support_gap = std::max(
        support_gap,
        std::abs(path_payoff(path, eq.defense, game.b) - eq.utility));
  }

  VerificationReport report;
  report.epsilon_used = epsilon;
  report.support_gap = support_gap;
  report.normalization_gap = std::abs(prob_total - 1.0);

  // Defender side of the equilibrium definition: the first-order condition
  // c_j'(x_j) = d_j * sum of reach-weighted attack mass on j. For untargeted
  // defenders the condition degenerates to c_j'(x_j) = 0, i.e. x_j = 0.
  report.defender_gaps.assign(n + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    report.defender_gaps[j] = std::abs(game.costs[j].deriv(eq.defense[j]) -
                                       game.d[j] * attack_mass[j]);

  report.attacker_gap =
      best_attack_path(game.graph, eq.defense, game.b).value - eq.utility;

  report.is_epsilon_ne = report.normalization_gap <= epsilon &&
                         report.support_gap <= epsilon &&
                         report.attacker_gap <= epsilon &&
                         report.max_defender_gap() <= epsilon;
  return report;
}

SimulationResult simulate_payoffs(const GameInstance& game,
                                  const MixedEquilibrium& eq,
                                  std::uint64_t samples, std::uint64_t seed,
                                  int streams) {
  if (samples < 1) raise(Errc::invalid_flag, "sample count must be >= 1");
  if (streams < 1) raise(Errc::invalid_flag, "stream count must be >= 1");
  const int n = game.n;

  std::vector<double> cum;
  cum.reserve(eq.attacker.size());
  double acc = 0.0;
  for (const auto& [path, prob] : eq.attacker) {
    acc += prob;
    cum.push_back(acc);
  }
  if (cum.empty()) raise(Errc::structural_mismatch, "no attack paths given");

  double value_sum = 0.0, value_sq_sum = 0.0;
  std::vector<std::uint64_t> hits(n + 1, 0);

  std::uint64_t mix = seed;
  for (int s = 0; s < streams; ++s) {
    std::mt19937_64 rng(splitmix64(mix));
    std::uint64_t quota = samples / streams;
    if (s < static_cast<int>(samples % streams)) ++quota;
    for (std::uint64_t i = 0; i < quota; ++i) {
      const double u = uniform01(rng) * acc;
      std::size_t idx =
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
      if (idx >= cum.size()) idx = cum.size() - 1;
      const auto& path = eq.attacker[idx].first;

      bool through = true;
      for (std::size_t t = 1; t < path.size(); ++t) {
        if (uniform01(rng) < eq.defense[path[t]]) {
          through = false;
          break;
        }
      }
      if (through) {
        const int target = path.back();
        const double value = game.b[target];
        value_sum += value;
        value_sq_sum += value * value;
        ++hits[target];
      }
    }
  }

  SimulationResult result;
  result.samples = samples;
  const double count = static_cast<double>(samples);
  result.attacker_mean = value_sum / count;
  if (samples > 1) {
    const double var =
        (value_sq_sum - count * result.attacker_mean * result.attacker_mean) /
        (count - 1.0);
    result.attacker_stderr = std::sqrt(std::max(var, 0.0) / count);
  }
  result.defender_mean.assign(n + 1, 0.0);
  result.defender_stderr.assign(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double p_hit = static_cast<double>(hits[j]) / count;
    result.defender_mean[j] =
        -game.d[j] * p_hit - game.costs[j].value(eq.defense[j]);
    if (samples > 1) {
      const double var =
          game.d[j] * game.d[j] * p_hit * (1.0 - p_hit) * count / (count - 1.0);
      result.defender_stderr[j] = std::sqrt(var / count);
    }
  }
  return result;
}

}  // namespace netgame
