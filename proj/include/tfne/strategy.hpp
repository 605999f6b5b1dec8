#pragma once

#include <map>
#include <vector>

#include "tfne/game.hpp"

namespace tfne {

struct UncoveredHistory : GameError {
  explicit UncoveredHistory(const std::string& k) : GameError("uncovered history: " + k) {}
};

// A distribution over a node's actions, parallel to its children order.
struct ActionDist {
  std::vector<Rational> w;

  static ActionDist point(int action_count, int action_index);
  static ActionDist uniform(int action_count);
  bool is_point() const;
  int point_index() const;  // -1 unless deterministic
  bool operator==(const ActionDist&) const = default;
};

// A behavioral reduced strategy: per-node action distributions, keyed by
// node id. The canonical domain is forced by the closure condition (a node
// belongs iff every own proper ancestor assigns its continuing action
// positive probability); entries beyond it are permitted off-path
// prescriptions, which full-strategy checks such as SPE need.
struct ReducedStrategy {
  Player player = 1;
  std::map<int, ActionDist> choice;

  bool has(int node) const { return choice.count(node) != 0; }
  const ActionDist& at(int node) const;
  void set(int node, ActionDist d) { choice[node] = std::move(d); }
};

struct StrategyProfile {
  ReducedStrategy s1, s2;

  const ReducedStrategy& of(Player p) const { return p == 1 ? s1 : s2; }
  ReducedStrategy& of(Player p) { return p == 1 ? s1 : s2; }
};

// A distribution over pure (deterministic) reduced strategies.
struct MixedReducedStrategy {
  Player player = 1;
  std::vector<std::pair<ReducedStrategy, Rational>> support;
};

struct OutcomeDistribution {
  std::map<int, Rational> prob;  // terminal node id -> probability

  Rational at(int node) const;
  Rational total() const;
};

// Nodes in the closure-forced domain of s (own non-terminal nodes reachable
// under s's own positive-probability choices).
std::vector<int> canonical_domain(const ExtensiveGame& g, const ReducedStrategy& s);

// Violations: missing coverage of the canonical domain, malformed
// distributions (wrong arity, negative weight, sum != 1), wrong owner.
std::vector<std::string> validate_strategy(const ExtensiveGame& g, const ReducedStrategy& s);

// True iff the strategy's domain is exactly the canonical one.
bool is_canonical_reduced(const ExtensiveGame& g, const ReducedStrategy& s);

// Drops entries outside the canonical domain.
ReducedStrategy canonicalize(const ExtensiveGame& g, const ReducedStrategy& s);

// Defined at every own non-terminal node.
bool is_total(const ExtensiveGame& g, const ReducedStrategy& s);

Rational reach_probability(const ExtensiveGame& g, const StrategyProfile& p, int node);

OutcomeDistribution outcome_distribution(const ExtensiveGame& g, const StrategyProfile& p);

Rational expected_payoff(const ExtensiveGame& g, const StrategyProfile& p, Player i);

// Outcome when play starts at h (non-terminal) and follows p below it.
OutcomeDistribution conditional_outcome(const ExtensiveGame& g, const StrategyProfile& p, int h);

Rational conditional_payoff(const ExtensiveGame& g, const StrategyProfile& p, int h, Player i);

ReducedStrategy mixed_to_behavioral(const ExtensiveGame& g, const MixedReducedStrategy& m);

// True iff a and b induce the same outcome distribution against every pure
// reduced strategy of the opponent (exhaustive; small games only).
bool outcome_equivalent(const ExtensiveGame& g, const ReducedStrategy& a, const ReducedStrategy& b);

// All pure reduced strategies of player p (canonical domains). Exponential;
// guarded by a cap on the result size.
std::vector<ReducedStrategy> enumerate_pure_reduced(const ExtensiveGame& g, Player p,
                                                    size_t cap = 2'000'000);

// --- round machinery (alternating games) ------------------------------------

// A round-R strategy: distributions at every reachable round-R history of
// the round's owner.
struct RoundStrategy {
  Player player = 1;
  int round = 1;
  std::map<int, ActionDist> at;

  bool operator==(const RoundStrategy&) const = default;
};

// The round-R component of s restricted to its canonical domain.
RoundStrategy round_component(const ExtensiveGame& g, const ReducedStrategy& s, int round);

// True iff the round components of a and b agree for every round < R.
// Only rounds owned by the player carry content.
bool prefix_equal(const ExtensiveGame& g, const ReducedStrategy& a, const ReducedStrategy& b,
                  int round);

}  // namespace tfne
