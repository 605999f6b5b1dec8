#pragma once

#include "tfne/random_games.hpp"
#include "tfne/threats.hpp"

namespace tfne {

struct SuiteResult {
  std::string name;
  std::uint64_t passed = 0, total = 0;
  std::vector<std::string> failures;

  bool ok() const { return total > 0 && passed == total; }
  std::string summary() const;
};

// --- independent oracles ------------------------------------------------------

// A pure assignment of actions to a subtree's decision nodes, with the
// conditional payoff pair it induces at the subtree root.
struct SubtreeAssignment {
  std::map<int, int> action;
  Rational v1, v2;
};

// All threat-free pure assignments of the subtree at w, grouped implicitly
// by the action at w: built by enumerating choices and filtering each child
// per the definition (child restriction threat-free, and the prescribed
// child action not beaten by a deviation's threat-free continuations).
std::vector<SubtreeAssignment> oracle_tf_set(const ExtensiveGame& g, int w,
                                             std::map<int, std::vector<SubtreeAssignment>>& cache);

// The threat-free members of Cont(h, sigma, tau), as below-h assignments.
std::vector<SubtreeAssignment> oracle_tf_members(
    const ExtensiveGame& g, int h, std::map<int, std::vector<SubtreeAssignment>>& cache);

// Direct recursion mirroring the round-parameterized definitions, with no
// memoization; used to revalidate the analyzer and the constructive witness.
bool oracle_eps_threat_free(const ExtensiveGame& g, const ConstraintSet& t, int i, int j,
                            int round, const Rational& eps);

// --- property suites ----------------------------------------------------------

SuiteResult verify_prop1(std::uint64_t trials, std::uint64_t seed);
SuiteResult verify_prop2(std::uint64_t trials, std::uint64_t seed);
SuiteResult verify_general_theorem(std::uint64_t trials, std::uint64_t seed);
SuiteResult verify_zero_sum(std::uint64_t trials, std::uint64_t seed);
SuiteResult verify_tfne_spe(std::uint64_t trials, std::uint64_t seed);
SuiteResult verify_mixed_behavioral(std::uint64_t trials, std::uint64_t seed);

}  // namespace tfne
