#include "tfne/montecarlo.hpp"

#include <sstream>

#ifdef TFNE_HAVE_OPENMP
#include <omp.h>
#endif

namespace tfne {

std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_transcript(const ExtensiveGame& g, const Transcript& t) {
  std::ostringstream out;
  int round = 1;
  for (const auto& [player, label] : t.messages)
    out << "round " << round++ << " player " << player << ": " << label << "\n";
  out << "leaf: " << history_key(g.path(t.leaf)) << " u1=" << format_rational(g.node(t.leaf).u1)
      << " u2=" << format_rational(g.node(t.leaf).u2) << "\n";
  return out.str();
}

Transcript run_protocol(const ExtensiveGame& g, const MachineSpec& m1, const MachineSpec& m2,
                        int k, std::uint64_t seed) {
  auto coins_for = [&](const MachineSpec& m, int salt) {
    int cb = m.coin_bits(k);
    std::uint64_t mask = cb >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cb) - 1;
    return mix_seed(seed * 2 + salt) & mask;
  };
  std::uint64_t c1 = coins_for(m1, 0), c2 = coins_for(m2, 1);
  Transcript t;
  int id = g.root();
  History path;
  while (!g.node(id).terminal) {
    Player p = g.node(id).owner;
    const MachineSpec& m = p == 1 ? m1 : m2;
    std::string out = m.next(k, p == 1 ? c1 : c2, path);
    if (g.child(id, out) == -1) out = kAbort;
    int next = g.child(id, out);
    if (next == -1)
      throw GameError("machine output has no interpretation at " + history_key(path));
    t.messages.emplace_back(p, out);
    path.push_back(out);
    id = next;
  }
  t.leaf = id;
  return t;
}

std::map<int, std::uint64_t> empirical_outcome_distribution_serial(const ExtensiveGame& g,
                                                                   const MachineSpec& m1,
                                                                   const MachineSpec& m2, int k,
                                                                   std::uint64_t runs,
                                                                   std::uint64_t seed) {
  std::map<int, std::uint64_t> counts;
  for (std::uint64_t r = 0; r < runs; ++r)
    ++counts[run_protocol(g, m1, m2, k, mix_seed(seed) + r).leaf];
  return counts;
}

std::map<int, std::uint64_t> empirical_outcome_distribution(const ExtensiveGame& g,
                                                            const MachineSpec& m1,
                                                            const MachineSpec& m2, int k,
                                                            std::uint64_t runs,
                                                            std::uint64_t seed) {
#ifdef TFNE_HAVE_OPENMP
  std::vector<std::uint64_t> leaf_counts(g.size(), 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(g.size(), 0);
#pragma omp for schedule(static)
    for (long long r = 0; r < static_cast<long long>(runs); ++r)
      ++local[run_protocol(g, m1, m2, k, mix_seed(seed) + static_cast<std::uint64_t>(r)).leaf];
#pragma omp critical
    for (int i = 0; i < g.size(); ++i) leaf_counts[i] += local[i];
  }
  std::map<int, std::uint64_t> counts;
  for (int i = 0; i < g.size(); ++i)
    if (leaf_counts[i]) counts[i] = leaf_counts[i];
  return counts;
#else
  return empirical_outcome_distribution_serial(g, m1, m2, k, runs, seed);
#endif
}

}  // namespace tfne
