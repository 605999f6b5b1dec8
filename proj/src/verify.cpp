#include "tfne/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace tfne {

std::string SuiteResult::summary() const {
  std::ostringstream out;
  out << name << ": " << passed << "/" << total << (ok() ? " passed" : " FAILED");
  if (!failures.empty()) out << " (first failure: " << failures.front() << ")";
  return out.str();
}

namespace {

// Elements of tf whose action at c survives the threat test at c: no
// deviation's threat-free continuations all beat the prescription's
// threat-free continuations in the owner's conditional payoff.
std::vector<SubtreeAssignment> unthreatened_at(const ExtensiveGame& g, int c,
                                               const std::vector<SubtreeAssignment>& tf) {
  Player owner = g.node(c).owner;
  auto value = [&](const SubtreeAssignment& s) { return owner == 1 ? s.v1 : s.v2; };
  const int arity = static_cast<int>(g.node(c).children.size());
  // Per action at c: min and max conditional owner value over the
  // threat-free assignments taking that action.
  std::vector<std::vector<const SubtreeAssignment*>> group(arity);
  for (const auto& s : tf) group[s.action.at(c)].push_back(&s);
  std::vector<SubtreeAssignment> out;
  for (const auto& s : tf) {
    int presc = s.action.at(c);
    bool threatened = false;
    for (int dev = 0; dev < arity && !threatened; ++dev) {
      if (dev == presc) continue;
      // Both quantifiers are universal: empty sides make the comparison
      // vacuously true.
      if (group[dev].empty() || group[presc].empty()) {
        threatened = true;
        continue;
      }
      Rational dev_min = value(*group[dev].front());
      for (auto* p : group[dev]) dev_min = std::min(dev_min, value(*p));
      Rational presc_max = value(*group[presc].front());
      for (auto* p : group[presc]) presc_max = std::max(presc_max, value(*p));
      if (dev_min > presc_max) threatened = true;
    }
    if (!threatened) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<SubtreeAssignment> oracle_tf_set(const ExtensiveGame& g, int w,
                                             std::map<int, std::vector<SubtreeAssignment>>& cache) {
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;
  const auto& n = g.node(w);
  // Per child: the threat-free-and-unthreatened assignments to combine.
  std::vector<std::vector<SubtreeAssignment>> parts;
  for (const auto& [label, c] : n.children) {
    if (g.node(c).terminal) {
      SubtreeAssignment leaf;
      leaf.v1 = g.node(c).u1;
      leaf.v2 = g.node(c).u2;
      parts.push_back({leaf});
    } else {
      parts.push_back(unthreatened_at(g, c, oracle_tf_set(g, c, cache)));
    }
  }
  std::vector<SubtreeAssignment> out;
  std::function<void(size_t, SubtreeAssignment&)> combine = [&](size_t i, SubtreeAssignment& cur) {
    if (i == parts.size()) {
      for (size_t a = 0; a < n.children.size(); ++a) {
        SubtreeAssignment s = cur;
        s.action[w] = static_cast<int>(a);
        // Conditional value at w = value of the chosen child's subtree.
        int c = n.children[a].second;
        if (g.node(c).terminal) {
          s.v1 = g.node(c).u1;
          s.v2 = g.node(c).u2;
        } else {
          // Find the chosen child's root value inside cur's actions: walk
          // down following cur's choices.
          int cur_node = c;
          while (!g.node(cur_node).terminal)
            cur_node = g.node(cur_node).children[s.action.at(cur_node)].second;
          s.v1 = g.node(cur_node).u1;
          s.v2 = g.node(cur_node).u2;
        }
        out.push_back(std::move(s));
      }
      return;
    }
    for (const auto& part : parts[i]) {
      SubtreeAssignment next = cur;
      next.action.insert(part.action.begin(), part.action.end());
      combine(i + 1, next);
    }
  };
  SubtreeAssignment empty;
  combine(0, empty);
  cache[w] = out;
  return out;
}

std::vector<SubtreeAssignment> oracle_tf_members(
    const ExtensiveGame& g, int h, std::map<int, std::vector<SubtreeAssignment>>& cache) {
  const auto& n = g.node(h);
  std::vector<std::vector<SubtreeAssignment>> parts;
  for (const auto& [label, c] : n.children) {
    if (g.node(c).terminal) continue;
    parts.push_back(unthreatened_at(g, c, oracle_tf_set(g, c, cache)));
  }
  std::vector<SubtreeAssignment> out{SubtreeAssignment{}};
  for (const auto& part : parts) {
    std::vector<SubtreeAssignment> next;
    for (const auto& base : out)
      for (const auto& add : part) {
        SubtreeAssignment s = base;
        s.action.insert(add.action.begin(), add.action.end());
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

bool oracle_eps_threat_at(const ExtensiveGame& g, const ConstraintSet& t, int i, int j, int round,
                          const Rational& eps);

std::vector<Player> oracle_round_owners(const ExtensiveGame& g) {
  std::vector<Player> owners(g.max_round(), 0);
  for (int id = 0; id < g.size(); ++id)
    if (!g.node(id).terminal) owners[g.node(id).round - 1] = g.node(id).owner;
  return owners;
}

Rational oracle_payoff(const ExtensiveGame& g, const ConstraintSet& t, int i, int j, Player p) {
  StrategyProfile pr{t.t1[i], t.t2[j]};
  return expected_payoff(g, pr, p);
}

bool oracle_prefix_match(const ExtensiveGame& g, const ConstraintSet& t,
                         const std::vector<Player>& owners, int i, int j, int oi, int oj,
                         int upto) {
  for (int r = 1; r < upto; ++r) {
    Player m = owners[r - 1];
    if (m == 0) continue;
    const ReducedStrategy& a = m == 1 ? t.t1[i] : t.t2[j];
    const ReducedStrategy& b = m == 1 ? t.t1[oi] : t.t2[oj];
    if (!(round_component(g, a, r) == round_component(g, b, r))) return false;
  }
  return true;
}

bool oracle_eps_threat_at(const ExtensiveGame& g, const ConstraintSet& t, int i, int j, int round,
                          const Rational& eps) {
  auto owners = oracle_round_owners(g);
  Player m = round - 1 < static_cast<int>(owners.size()) ? owners[round - 1] : 0;
  if (m == 0) return false;
  int mover_idx = m == 1 ? i : j;
  const ReducedStrategy& presc_strat = m == 1 ? t.t1[i] : t.t2[j];
  RoundStrategy presc = round_component(g, presc_strat, round);

  auto cont = [&](const RoundStrategy& tau) {
    std::vector<std::pair<int, int>> out;
    for (size_t a = 0; a < t.t1.size(); ++a)
      for (size_t b = 0; b < t.t2.size(); ++b) {
        int ai = static_cast<int>(a), bi = static_cast<int>(b);
        if (!oracle_prefix_match(g, t, owners, ai, bi, i, j, round)) continue;
        const ReducedStrategy& s = m == 1 ? t.t1[a] : t.t2[b];
        if (!(round_component(g, s, round) == tau)) continue;
        out.emplace_back(ai, bi);
      }
    return out;
  };
  auto tf_filter = [&](const std::vector<std::pair<int, int>>& members) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : members)
      if (oracle_eps_threat_free(g, t, a, b, round, eps)) out.emplace_back(a, b);
    return out;
  };

  auto presc_tf = tf_filter(cont(presc));
  for (size_t s = 0; s < t.of(m).size(); ++s) {
    const ReducedStrategy& cand_strat = t.of(m)[s];
    bool prefix_ok = true;
    for (int r = 1; r < round && prefix_ok; ++r)
      if (owners[r - 1] == m &&
          !(round_component(g, cand_strat, r) == round_component(g, presc_strat, r)))
        prefix_ok = false;
    if (!prefix_ok) continue;
    RoundStrategy tau = round_component(g, cand_strat, round);
    if (tau == presc) continue;
    auto dev = cont(tau);
    if (dev.empty()) continue;
    auto dev_tf = tf_filter(dev);
    if (dev_tf.empty() || presc_tf.empty()) return true;  // vacuous universals
    Rational dev_min = oracle_payoff(g, t, dev_tf[0].first, dev_tf[0].second, m);
    for (auto [a, b] : dev_tf) dev_min = std::min(dev_min, oracle_payoff(g, t, a, b, m));
    Rational presc_max = oracle_payoff(g, t, presc_tf[0].first, presc_tf[0].second, m);
    for (auto [a, b] : presc_tf) presc_max = std::max(presc_max, oracle_payoff(g, t, a, b, m));
    if (dev_min > presc_max + eps) return true;
  }
  return false;
}

}  // namespace

bool oracle_eps_threat_free(const ExtensiveGame& g, const ConstraintSet& t, int i, int j,
                            int round, const Rational& eps) {
  int last = g.last_decision_round();
  for (int s = round + 1; s <= last; ++s)
    if (oracle_eps_threat_at(g, t, i, j, s, eps)) return false;
  return true;
}

// --- suites -------------------------------------------------------------------

SuiteResult verify_prop1(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "unique threat-free continuation (oracle equivalence)";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    // Keep subtree enumeration tractable: deeper trees get narrower.
    bool deep = rng() % 2 == 0;
    ExtensiveGame g =
        random_game(rng, deep ? 4 : 3, deep ? 2 : 3, /*alternating=*/false, /*generic=*/true);
    StrategyProfile sigma = random_total_profile(g, rng);
    // Prefer histories with decision nodes below them; all-terminal children
    // make the uniqueness claim trivially true.
    auto nts = g.nonterminals();
    std::vector<int> with_depth;
    for (int id : nts)
      for (const auto& [label, c] : g.node(id).children)
        if (!g.node(c).terminal) {
          with_depth.push_back(id);
          break;
        }
    const auto& pool = with_depth.empty() ? nts : with_depth;
    int h = pool[rng() % pool.size()];
    ActionDist tau = random_action_dist(rng, static_cast<int>(g.node(h).children.size()));

    std::ostringstream fail;
    try {
      StrategyProfile built = threat_free_continuation(g, sigma, h, tau);
      std::map<int, std::vector<SubtreeAssignment>> cache;
      auto members = oracle_tf_members(g, h, cache);
      if (members.size() != 1) {
        fail << "trial " << trial << ": " << members.size() << " threat-free members";
      } else {
        for (const auto& [node, action] : members.front().action) {
          Player owner = g.node(node).owner;
          if (built.of(owner).at(node).point_index() != action) {
            fail << "trial " << trial << ": mismatch at " << history_key(g.path(node));
            break;
          }
        }
      }
    } catch (const std::exception& e) {
      fail << "trial " << trial << ": " << e.what();
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

SuiteResult verify_prop2(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "constructive threat-free member in every nonempty continuation set";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    ExtensiveGame g = random_game(rng, 4, 2, /*alternating=*/true, /*generic=*/false);
    ConstraintSet t = random_constraint_set(g, rng, 6);
    Rational eps = trial % 2 == 0 ? Rational(0) : Rational(1, 10);
    int i = static_cast<int>(rng() % t.t1.size());
    int j = static_cast<int>(rng() % t.t2.size());
    StrategyProfile sigma{t.t1[i], t.t2[j]};

    std::ostringstream fail;
    int last = g.last_decision_round();
    for (int round = 1; round <= last && fail.str().empty(); ++round) {
      Player m = 0;
      for (int id : g.nonterminals())
        if (g.node(id).round == round) m = g.node(id).owner;
      if (m == 0) continue;
      for (const auto& member : t.of(m)) {
        RoundStrategy tau = round_component(g, member, round);
        ContinuationSet cont = enumerate_cont(g, t, sigma, round, tau);
        if (cont.members.empty()) continue;
        auto witness = exists_tf_in_cont(g, t, sigma, round, tau, eps);
        if (!witness) {
          fail << "trial " << trial << ": no witness for a nonempty set at round " << round;
          break;
        }
        if (std::find(cont.members.begin(), cont.members.end(), *witness) ==
            cont.members.end()) {
          fail << "trial " << trial << ": witness outside the continuation set";
          break;
        }
        if (!oracle_eps_threat_free(g, t, witness->first, witness->second, round, eps)) {
          fail << "trial " << trial << ": witness fails the direct-recursion recheck at round "
               << round;
          break;
        }
      }
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

SuiteResult verify_general_theorem(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "eps-NE + weakly Pareto optimal + eps-safe implies eps-TFNE";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    ExtensiveGame g = random_game(rng, 3, 3, /*alternating=*/true, /*generic=*/false);
    ConstraintSet t = random_constraint_set(g, rng, 4);
    Rational eps = trial % 2 == 0 ? Rational(0) : Rational(1, 10);
    std::ostringstream fail;
    for (size_t i = 0; i < t.t1.size() && fail.str().empty(); ++i) {
      for (size_t j = 0; j < t.t2.size(); ++j) {
        StrategyProfile p{t.t1[i], t.t2[j]};
        if (!is_epsilon_ne(g, t, p, eps).holds) continue;
        if (!is_weakly_pareto_optimal(g, t, p).holds) continue;
        if (!is_epsilon_safe(g, t, p, eps).holds) continue;
        if (!is_eps_tfne(g, t, p, eps).holds) {
          fail << "trial " << trial << ": hypothesis-satisfying profile (" << i << "," << j
               << ") is not an eps-TFNE";
          break;
        }
      }
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

SuiteResult verify_zero_sum(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "zero-sum corollary: every constrained eps-NE is an eps-TFNE";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    ExtensiveGame g =
        random_game(rng, 3, 3, /*alternating=*/true, /*generic=*/false, /*zero_sum=*/true);
    ConstraintSet t = random_constraint_set(g, rng, 4);
    Rational eps = trial % 2 == 0 ? Rational(0) : Rational(1, 10);
    std::ostringstream fail;
    for (size_t i = 0; i < t.t1.size() && fail.str().empty(); ++i) {
      for (size_t j = 0; j < t.t2.size(); ++j) {
        StrategyProfile p{t.t1[i], t.t2[j]};
        if (!is_epsilon_ne(g, t, p, eps).holds) continue;
        if (!is_eps_tfne(g, t, p, eps).holds) {
          fail << "trial " << trial << ": zero-sum eps-NE (" << i << "," << j
               << ") is not an eps-TFNE";
          break;
        }
      }
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

SuiteResult verify_tfne_spe(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "every pure TFNE outcome matches the backward-induction outcome";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    // Resample until the pure-profile space is enumerable.
    ExtensiveGame g;
    for (;;) {
      g = random_game(rng, 3, 3, /*alternating=*/false, /*generic=*/true);
      double log_profiles = 0;
      for (int id : g.nonterminals()) log_profiles += std::log2(g.node(id).children.size());
      if (log_profiles <= 14) break;
    }
    StrategyProfile spe = spe_backward_induction(g);
    auto spe_outcome = outcome_distribution(g, spe).prob;
    std::ostringstream fail;
    for (const auto& p : all_pure_total_profiles(g)) {
      if (!is_tfne(g, p).holds) continue;
      if (outcome_distribution(g, p).prob != spe_outcome) {
        fail << "trial " << trial << ": TFNE outcome differs from the backward-induction outcome";
        break;
      }
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

SuiteResult verify_mixed_behavioral(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "mixed-to-behavioral outcome equivalence against all opponent pure strategies";
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++res.total;
    ExtensiveGame g = random_game(rng, 4, 2, /*alternating=*/false, /*generic=*/false);
    Player p = 1 + static_cast<Player>(rng() % 2);
    MixedReducedStrategy m = random_mixed_reduced(g, p, rng, 4);
    ReducedStrategy b = mixed_to_behavioral(g, m);
    std::ostringstream fail;
    for (const auto& opp : enumerate_pure_reduced(g, other_player(p))) {
      // Outcome of the mixture: the weighted sum of the pure outcomes.
      std::map<int, Rational> mixed;
      for (const auto& [pure, w] : m.support) {
        StrategyProfile pr;
        pr.of(p) = pure;
        pr.of(other_player(p)) = opp;
        for (const auto& [leaf, q] : outcome_distribution(g, pr).prob) mixed[leaf] += w * q;
      }
      std::erase_if(mixed, [](const auto& kv) { return kv.second == 0; });
      StrategyProfile pb;
      pb.of(p) = b;
      pb.of(other_player(p)) = opp;
      auto behavioral = outcome_distribution(g, pb).prob;
      std::erase_if(behavioral, [](const auto& kv) { return kv.second == 0; });
      if (mixed != behavioral) {
        fail << "trial " << trial << ": outcome mismatch against an opponent pure strategy";
        break;
      }
    }
    if (fail.str().empty())
      ++res.passed;
    else
      res.failures.push_back(fail.str());
  }
  return res;
}

}  // namespace tfne
