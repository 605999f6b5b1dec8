#pragma once

#include <memory>

#include "tfne/crypto.hpp"
#include "tfne/threats.hpp"

namespace tfne {

struct MachineFiltered : GameError {
  explicit MachineFiltered(Player p)
      : GameError("prescribed machine of player " + std::to_string(p) +
                  " was rejected by its filter") {}
};
struct NotDyadic : GameError {
  using GameError::GameError;
};
struct NotAConvexCombination : GameError {
  using GameError::GameError;
};

// --- guess-the-preimage games -------------------------------------------------

// Round 1: P1 sends an n-bit message y; round 2: P2 answers z. P2 wins
// (-1, +1) iff z is the preimage of y under f, else (+1, -1).
ExtensiveGame build_owp_game(int n, const ToyOWP& f);

// Variant with a distinguished all-zero message: both zero -> (+2, +2);
// exactly one zero -> (-2, -2); otherwise as build_owp_game.
ExtensiveGame build_modified_owp_game(int n, const ToyOWP& f);

// --- machines, filters, tractable sets ---------------------------------------

// F_i(M, k, eps): nullopt rejects the machine; otherwise its strategic
// representation in the target game.
using StrategyFilter =
    std::function<std::optional<ReducedStrategy>(const MachineSpec&, int k, const Rational& eps)>;

// The behavioral reduced strategy of m over uniform coins: at each own node
// consistent with m's earlier replies, the conditional next-action
// distribution, by full coin enumeration.
ReducedStrategy strategic_representation(const MachineSpec& m, int k, const ExtensiveGame& g);

// Non-rejected representations over the family, duplicates removed.
std::vector<ReducedStrategy> tractable_set(const StrategyFilter& filter,
                                           const std::vector<MachineSpec>& family, int k,
                                           const Rational& eps, const ExtensiveGame& g);

// Per machine, the least k in k_range from which it is never rejected
// (-1 when rejected at every suffix of the range).
struct CoveringReport {
  struct Entry {
    std::string machine;
    int first_stable_k = -1;
  };
  std::vector<Entry> entries;
};
CoveringReport covering_check(const StrategyFilter& filter, const std::vector<MachineSpec>& family,
                              const Rational& eps, const std::vector<int>& k_range);

// The single-(k, eps) instance check: filter both prescribed machines
// (MachineFiltered if either is rejected), build the constrained game from
// the families' tractable sets, and test the representations.
struct CtfneResult {
  EpsTfneVerdict verdict;
  ConstraintSet t;
  StrategyProfile profile;
};
CtfneResult check_ctfne_at(const ExtensiveGame& g, int k, const Rational& eps,
                           const MachineSpec& m1, const MachineSpec& m2, const StrategyFilter& f1,
                           const StrategyFilter& f2, const std::vector<MachineSpec>& family1,
                           const std::vector<MachineSpec>& family2);

// Filter for the preimage games: player 1 always passes; player 2 is
// rejected iff its probability of answering the preimage of a uniformly
// drawn message exceeds 1/2 + eps.
StrategyFilter owp_guess_filter(const ToyOWP& f, const ExtensiveGame& g);

// Machine registries for the modified game at bit-length n (identity f in
// the shipped instances): P1 point-message machines, the uniform-over-
// nonzero machine; P2 the prescribed responder, the uniform responder, and
// the brute inverter.
std::vector<MachineSpec> owp_p1_registry(int n);
std::vector<MachineSpec> owp_p2_registry(int n, const ToyOWP& f);

// --- coin flipping ------------------------------------------------------------

// Three alternating rounds: P1 commits (or aborts, (0,1)); P2 replies a bit
// (or aborts, (1,0)); P1 decommits (or aborts). P1 earns (1,0) exactly when
// the decommitment legally reveals 1 - r2; anything else at round 3 is an
// abort worth (0,1).
ExtensiveGame build_coinflip_game(const CommitmentScheme& s);

MachineSpec coinflip_honest_p1(const CommitmentScheme& s);
MachineSpec coinflip_honest_p2();

// Registered machine families for the coin-flip analysis; the P2 family
// includes the brute inverter built from `toy_f` (it degrades to a constant
// guesser on unparseable commitments, e.g. ideal tokens).
std::vector<MachineSpec> coinflip_p1_registry(const CommitmentScheme& s);
std::vector<MachineSpec> coinflip_p2_registry(const ToyOWP& toy_f);

// Guessers for hiding_advantage; every member has advantage exactly 0
// against the ideal scheme.
std::vector<MachineSpec> guesser_registry(const ToyOWP& toy_f);

// The commitment-guessing machine itself (round-2 reply parsed as a guess
// of the committed bit).
MachineSpec coinflip_brute_inverter(const ToyOWP& toy_f);

// P1 never rejected; P2 rejected iff Pr[round-2 reply = committed bit] over
// a uniform bit, scheme coins, and machine coins exceeds 1/2 + eps.
StrategyFilter coinflip_filter(const CommitmentScheme& s);

// --- mediator removal ---------------------------------------------------------

// A correlated equilibrium as a uniform sequence over 2^ell listed NEs.
struct CEDecomposition {
  int ell = 0;
  std::vector<int> sequence;  // indices into the NE list, length 2^ell
  std::pair<Rational, Rational> payoffs;
};

// Expands dyadic weights over nes.list into the minimal uniform sequence.
CEDecomposition decompose_ce(const NormalFormGame& nf, const BimatrixNEList& nes,
                             const std::vector<Rational>& weights);

struct DhrGame {
  GSMLGame game;
  int ell = 0;
  int worst_ne_p1 = -1, worst_ne_p2 = -1;  // punishment NE indices
};

// Three rounds: P1 commits to r (abort -> punish P1), P2 replies r' (abort
// -> punish P2), P1 decommits (failure -> punish P1; success -> the leaf
// game plays the NE indexed r xor r').
DhrGame build_dhr_game(const NormalFormGame& nf, const BimatrixNEList& nes,
                       const CEDecomposition& d, const CommitmentScheme& s);

MachineSpec dhr_honest_p1(int ell, const CommitmentScheme& s);
MachineSpec dhr_honest_p2(int ell);
std::vector<MachineSpec> dhr_p1_registry(int ell, const CommitmentScheme& s);
std::vector<MachineSpec> dhr_p2_registry(int ell, const ToyOWP& toy_f);

// P1 never rejected; P2 rejected iff its representation strictly
// eps-improves P2's payoff against the honest P1 on the pruned game.
StrategyFilter dhr_filter_p2(const DhrGame& dg, const CommitmentScheme& s);
StrategyFilter accept_all_filter(const ExtensiveGame& g);

}  // namespace tfne
