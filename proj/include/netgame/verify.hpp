#pragma once

#include <cstdint>
#include <vector>

#include "netgame/engine.hpp"

namespace netgame {

/// Outcome of an epsilon-equilibrium check. Gaps measure how much each side
/// of the equilibrium conditions is violated; the profile is an epsilon-NE
/// iff every gap is at most epsilon_used.
struct VerificationReport {
  bool is_epsilon_ne = false;
  double epsilon_used = 0.0;
  double attacker_gap = 0.0;  // best deviation payoff minus claimed utility
  double support_gap = 0.0;   // max |support path payoff - utility|
  std::vector<double> defender_gaps;  // by label; first-order residuals
  double normalization_gap = 0.0;

  double max_defender_gap() const;
};

struct BestAttack {
  std::vector<int> path;
  double value = 0.0;
};

/// Best response of the attacker against investments x: the most reliable
/// path to the most profitable target. Solved as a shortest-path problem on
/// node weights -log(1-x); x = 1 acts as an infinite weight.
BestAttack best_attack_path(const Graph& g, const std::vector<double>& x,
                            const std::vector<double>& b);

/// Brute-force twin of best_attack_path enumerating all simple paths.
/// Only for small instances (<= 10 defenders); used to validate the
/// shortest-path reduction.
BestAttack best_attack_path_exhaustive(const Graph& g,
                                       const std::vector<double>& x,
                                       const std::vector<double>& b);

/// Check the equilibrium conditions directly against their definition:
/// no attacker path beats the claimed utility, support paths attain it,
/// every defender satisfies his first-order condition, probabilities are
/// normalized. Shares no code with the constructive solver.
VerificationReport verify_equilibrium(const GameInstance& game,
                                      const MixedEquilibrium& eq,
                                      double epsilon);

struct SimulationResult {
  double attacker_mean = 0.0;
  double attacker_stderr = 0.0;
  std::vector<double> defender_mean;    // by label
  std::vector<double> defender_stderr;  // by label
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of the attacker's utility and every defender's
/// payoff under the given profile. Deterministic for a fixed (seed, streams)
/// pair; the sample budget is split across `streams` independent substreams
/// and merged by weighted average.
SimulationResult simulate_payoffs(const GameInstance& game,
                                  const MixedEquilibrium& eq,
                                  std::uint64_t samples, std::uint64_t seed,
                                  int streams = 1);

}  // namespace netgame
