#pragma once

#include <optional>

#include "tfne/strategy.hpp"

namespace tfne {

struct ProfileNotInConstraints : GameError {
  explicit ProfileNotInConstraints(Player p)
      : GameError("player " + std::to_string(p) + "'s strategy is not in the constraint set") {}
};

// The explicit finite strategy sets of a constrained game.
struct ConstraintSet {
  std::vector<ReducedStrategy> t1, t2;

  const std::vector<ReducedStrategy>& of(Player p) const { return p == 1 ? t1 : t2; }
  std::vector<ReducedStrategy>& of(Player p) { return p == 1 ? t1 : t2; }
  // Index of s in the player's list (canonicalized comparison), or -1.
  int member_index(const ExtensiveGame& g, const ReducedStrategy& s) const;
};

// Verdict of a deviation scan. When the check fails, the witness names the
// deviating player, the deviation, and the (strictly > eps) gain; `site` is
// the node at which a local check failed, where applicable.
struct NEVerdict {
  bool holds = true;
  struct Witness {
    Player player = 0;
    ReducedStrategy deviation;
    Rational gain;
    int site = -1;
  };
  std::optional<Witness> witness;
};

// Constrained check: no unilateral deviation within t gains more than eps.
// Both components of p must belong to t.
NEVerdict is_epsilon_ne(const ExtensiveGame& g, const ConstraintSet& t, const StrategyProfile& p,
                        const Rational& eps);

// Unconstrained check: the best response is computed by backward induction
// against the opponent's (sufficiently covering) strategy.
NEVerdict is_epsilon_ne(const ExtensiveGame& g, const StrategyProfile& p, const Rational& eps);

// Best-response value and a pure best response of player i against p's other
// component, by backward induction from `from` (default: the root).
std::pair<Rational, ReducedStrategy> best_response(const ExtensiveGame& g,
                                                   const ReducedStrategy& opponent, Player i,
                                                   int from = 0);

// A pure 0-SPE by backward induction; unique on generic games (ties broken
// by first action in order). Both components are total.
StrategyProfile spe_backward_induction(const ExtensiveGame& g);

// The SPE inequality with slack eps at every non-terminal history.
NEVerdict is_spe(const ExtensiveGame& g, const StrategyProfile& p, const Rational& eps);

struct BimatrixEquilibrium {
  MixedProfile profile;
  Rational u1, u2;
};

struct BimatrixNEList {
  std::vector<BimatrixEquilibrium> list;
  // Set when some support system was underdetermined or an off-support
  // action ties the equilibrium value: the list then holds vertex solutions
  // only, not a continuum.
  bool degenerate = false;
};

// Support enumeration (equal-size supports), exact linear algebra; supports
// games up to 5x5.
BimatrixNEList bimatrix_ne_enumerate(const NormalFormGame& nf);

// The listed equilibrium minimizing player i's payoff, ties to the first.
const BimatrixEquilibrium& worst_ne_for(const NormalFormGame& nf, Player i,
                                        const BimatrixNEList& nes);

// Weak Pareto optimality of p over the finite profile space t1 x t2: fails
// iff some profile gives BOTH players strictly more.
struct ParetoVerdict {
  bool holds = true;
  std::optional<std::pair<int, int>> witness;  // indices into (t1, t2)
};
ParetoVerdict is_weakly_pareto_optimal(const ExtensiveGame& g, const ConstraintSet& t,
                                       const StrategyProfile& p);

// Whether some convex combination of the listed payoff points strictly
// dominates pi in both coordinates. Exact: a dominating hull point exists
// iff a vertex or a two-vertex edge point dominates.
struct HullDominance {
  bool dominated = false;
  std::vector<Rational> weights;  // over the listed equilibria, sums to 1
};
HullDominance ce_hull_dominated(const BimatrixNEList& nes,
                                const std::pair<Rational, Rational>& pi);

// eps-safety: no unilateral deviation within t lowers the OTHER player's
// expected payoff by more than eps. Witness gain = the drop inflicted.
NEVerdict is_epsilon_safe(const ExtensiveGame& g, const ConstraintSet& t, const StrategyProfile& p,
                          const Rational& eps);

}  // namespace tfne
