#pragma once

#include <random>

#include "tfne/equilibria.hpp"

namespace tfne {

// A random game tree. Depth counts decision rounds (every leaf sits at
// round <= max_depth + 1). Generic games get per-player pairwise distinct
// integer payoffs; zero-sum forces u2 = -u1.
ExtensiveGame random_game(std::mt19937_64& rng, int max_depth, int max_branch, bool alternating,
                          bool generic, bool zero_sum = false);

// A total behavioral profile with small random rational distributions.
StrategyProfile random_total_profile(const ExtensiveGame& g, std::mt19937_64& rng);

StrategyProfile random_pure_total_profile(const ExtensiveGame& g, std::mt19937_64& rng);

// Every pure profile defined at every decision node of both players.
std::vector<StrategyProfile> all_pure_total_profiles(const ExtensiveGame& g, size_t cap = 100000);

// Random per-player subsets of the pure reduced strategies.
ConstraintSet random_constraint_set(const ExtensiveGame& g, std::mt19937_64& rng, int max_size);

// A random mixture of distinct pure reduced strategies.
MixedReducedStrategy random_mixed_reduced(const ExtensiveGame& g, Player p, std::mt19937_64& rng,
                                          int max_support);

ActionDist random_action_dist(std::mt19937_64& rng, int arity);

}  // namespace tfne
