#pragma once

#include "tfne/equilibria.hpp"

namespace tfne {

struct LeafAssignmentNotNE : GameError {
  explicit LeafAssignmentNotNE(int leaf)
      : GameError("leaf assignment is not a Nash equilibrium (leaf node " + std::to_string(leaf) +
                  ")") {}
};

// How deviation and prescription continuations are compared: by full-game
// expected payoff (the literal reading; off-path threats are vacuous) or by
// payoff conditional on reaching the deviation site. The two modes are never
// mixed within one verdict.
enum class OutcomeMode { kUnconditional, kConditional };

struct ThreatReport {
  bool threatened = false;
  Player player = 0;
  int site = -1;   // history node (per-history analysis)
  int round = 0;   // round index (round-parameterized analysis)
  ActionDist deviation;          // per-history deviation
  RoundStrategy round_deviation; // round-parameterized deviation
  Rational gap;  // min deviation-side payoff minus max prescription-side payoff
  StrategyProfile dev_continuation, presc_continuation;
  // Set when the threat was found only by the dyadic-grid mixed-deviation
  // cross-check, not by the pure-action search.
  bool grid_only = false;
};

// The unique threat-free element of Cont(h, sigma, tau) on a generic game:
// sigma outside the subtree of h, tau at h, and below h the owner-optimal
// choice given the already-constructed descendants (built by increasing
// height). Throws NonGenericGame on a payoff tie at any step.
StrategyProfile threat_free_continuation(const ExtensiveGame& g, const StrategyProfile& sigma,
                                         int h, const ActionDist& tau);

// Searches deviations at h (point masses on each action plus the prescribed
// choice; optionally a dyadic grid of mixtures with denominators <= 8) and
// compares the unique threat-free continuations' payoffs.
ThreatReport is_threat_at(const ExtensiveGame& g, const StrategyProfile& sigma, int h,
                          OutcomeMode mode = OutcomeMode::kUnconditional,
                          bool dyadic_grid = false);

struct TfneVerdict {
  bool holds = true;
  NEVerdict ne;                        // the unconstrained 0-NE half
  std::optional<ThreatReport> threat;  // first threatened history, if any
};

// NE (eps = 0, unconstrained) and no history threatened.
TfneVerdict is_tfne(const ExtensiveGame& g, const StrategyProfile& sigma,
                    OutcomeMode mode = OutcomeMode::kUnconditional);

// --- round-parameterized calculus over constrained games ---------------------

struct ContinuationSet {
  int round = 1;
  RoundStrategy last;                       // the defining round-R component
  std::vector<std::pair<int, int>> members; // indices into (t1, t2)
};

// Members of t1 x t2 agreeing with `prefix` on every round < `round` and
// with `last` at `round`. May be empty.
ContinuationSet enumerate_cont(const ExtensiveGame& g, const ConstraintSet& t,
                               const StrategyProfile& prefix, int round,
                               const RoundStrategy& last);

// Shared analysis state: memoizes threat-freeness of constraint-set profile
// pairs per round, which the recursive definition requires. Confined to one
// analysis; inputs must outlive it.
class EpsAnalyzer {
 public:
  EpsAnalyzer(const ExtensiveGame& g, const ConstraintSet& t, Rational eps);

  // Profile (t1[i], t2[j]) carries no eps-threat at any round > `round`.
  bool threat_free_on(int i, int j, int round);
  // Whether the mover of `round` faces an eps-threat at it w.r.t. the pair.
  ThreatReport threat_at(int i, int j, int round);

  int last_round() const { return last_round_; }
  const Rational& payoff(int i, int j, Player p);
  const RoundStrategy& component(Player p, int index, int round);
  bool prefix_matches(int i, int j, int other_i, int other_j, int upto_round);

 private:
  const ExtensiveGame& g_;
  const ConstraintSet& t_;
  Rational eps_;
  int last_round_;
  std::vector<std::vector<std::vector<RoundStrategy>>> rc_;  // [player-1][index][round-1]
  std::vector<std::vector<std::optional<std::pair<Rational, Rational>>>> payoff_;
  std::map<std::tuple<int, int, int>, bool> tf_memo_;
  std::map<std::tuple<int, int, int>, ThreatReport> threat_memo_;
};

// The round-parameterized eps-threat check at round R for sigma in t x t.
ThreatReport is_eps_threat_at_round(const ExtensiveGame& g, const ConstraintSet& t,
                                    const StrategyProfile& sigma, int round, const Rational& eps);

struct EpsTfneVerdict {
  bool holds = true;
  NEVerdict ne;  // the constrained eps-NE half
  std::optional<ThreatReport> threat;
};

// Constrained eps-NE and no round carries an eps-threat.
EpsTfneVerdict is_eps_tfne(const ExtensiveGame& g, const ConstraintSet& t,
                           const StrategyProfile& sigma, const Rational& eps);

// Constructive existence: a member of Cont(prefix rounds < round of sigma,
// last at round) that is eps-threat-free on `round`, chosen by taking an
// eps-maximal next-round continuation; nullopt iff the set is empty.
// Returns indices into (t1, t2).
std::optional<std::pair<int, int>> exists_tf_in_cont(const ExtensiveGame& g,
                                                     const ConstraintSet& t,
                                                     const StrategyProfile& sigma, int round,
                                                     const RoundStrategy& last,
                                                     const Rational& eps);

// --- simultaneous-move leaves -------------------------------------------------

// Replaces each designated leaf's payoffs by its assigned profile's expected
// payoffs; tree shape and strategies are unchanged.
ExtensiveGame prune_gsml(const GSMLGame& gg);

// True iff mp is an exact Nash equilibrium of nf (no pure deviation gains).
bool is_normal_form_ne(const NormalFormGame& nf, const MixedProfile& mp);

// Every leaf assignment must be an exact NE of its leaf game (else
// LeafAssignmentNotNE); then the eps-TFNE check on the pruned game.
EpsTfneVerdict is_gsml_eps_tfne(const GSMLGame& gg, const ConstraintSet& t,
                                const StrategyProfile& sigma, const Rational& eps);

}  // namespace tfne
