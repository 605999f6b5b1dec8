#pragma once

#include "tfne/crypto.hpp"

namespace tfne {

struct Transcript {
  std::vector<std::pair<Player, std::string>> messages;  // "round R player i: label"
  int leaf = -1;
};

std::string format_transcript(const ExtensiveGame& g, const Transcript& t);

// One machine-vs-machine execution. Deterministic given the seed: each
// machine's coin vector is derived from (seed, player) once per run.
Transcript run_protocol(const ExtensiveGame& g, const MachineSpec& m1, const MachineSpec& m2,
                        int k, std::uint64_t seed);

// Leaf frequencies over `runs` executions with per-run derived seeds.
// Parallelized when OpenMP is available; run r always uses the same derived
// seed, so the counts match the serial reference exactly.
std::map<int, std::uint64_t> empirical_outcome_distribution(const ExtensiveGame& g,
                                                            const MachineSpec& m1,
                                                            const MachineSpec& m2, int k,
                                                            std::uint64_t runs,
                                                            std::uint64_t seed);

// Single-threaded reference implementation kept for testing and benchmarks.
std::map<int, std::uint64_t> empirical_outcome_distribution_serial(const ExtensiveGame& g,
                                                                   const MachineSpec& m1,
                                                                   const MachineSpec& m2, int k,
                                                                   std::uint64_t runs,
                                                                   std::uint64_t seed);

// splitmix64; used to derive independent per-run coin vectors.
std::uint64_t mix_seed(std::uint64_t seed);

}  // namespace tfne
