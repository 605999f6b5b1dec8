#include "tfne/random_games.hpp"

#include <algorithm>

namespace tfne {

namespace {

// Action labels "a", "b", ... per node.
std::string action_label(int i) { return std::string(1, static_cast<char>('a' + i)); }

}  // namespace

ExtensiveGame random_game(std::mt19937_64& rng, int max_depth, int max_branch, bool alternating,
                          bool generic, bool zero_sum) {
  ExtensiveGame g;
  g.set_alternating(alternating);
  std::uniform_int_distribution<int> branch(2, max_branch);
  std::uniform_int_distribution<int> owner_pick(1, 2);
  Player first = owner_pick(rng);

  struct Pending {
    int id;
    int depth;  // 1-based decision round
  };
  std::vector<int> leaves;
  std::vector<Pending> stack{{g.root(), 1}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    Player owner = alternating ? (depth % 2 == 1 ? first : other_player(first)) : owner_pick(rng);
    g.set_owner(id, owner);
    int arity = branch(rng);
    for (int a = 0; a < arity; ++a) {
      int c = g.add_child(id, action_label(a));
      // Interior nodes become leaves early with probability 1/4.
      bool leaf = depth >= max_depth || (depth > 1 && rng() % 4 == 0);
      if (leaf) {
        g.make_terminal(c, 0, 0);
        leaves.push_back(c);
      } else {
        stack.push_back({c, depth + 1});
      }
    }
  }
  // Payoffs: shuffled distinct integers when generic, small random integers
  // otherwise.
  std::vector<int> v1(leaves.size()), v2(leaves.size());
  if (generic) {
    for (size_t i = 0; i < leaves.size(); ++i) v1[i] = v2[i] = static_cast<int>(i) + 1;
    std::shuffle(v1.begin(), v1.end(), rng);
    std::shuffle(v2.begin(), v2.end(), rng);
  } else {
    std::uniform_int_distribution<int> pay(-5, 5);
    for (size_t i = 0; i < leaves.size(); ++i) {
      v1[i] = pay(rng);
      v2[i] = pay(rng);
    }
  }
  for (size_t i = 0; i < leaves.size(); ++i)
    g.make_terminal(leaves[i], v1[i], zero_sum ? -v1[i] : v2[i]);
  return g;
}

ActionDist random_action_dist(std::mt19937_64& rng, int arity) {
  ActionDist d;
  d.w.assign(arity, Rational(0));
  std::uniform_int_distribution<int> weight(0, 3);
  int total = 0;
  std::vector<int> raw(arity);
  for (int i = 0; i < arity; ++i) {
    raw[i] = weight(rng);
    total += raw[i];
  }
  if (total == 0) {
    raw[static_cast<size_t>(rng() % arity)] = 1;
    total = 1;
  }
  for (int i = 0; i < arity; ++i) d.w[i] = Rational(raw[i], total);
  return d;
}

StrategyProfile random_total_profile(const ExtensiveGame& g, std::mt19937_64& rng) {
  StrategyProfile p;
  p.s1.player = 1;
  p.s2.player = 2;
  for (int id : g.nonterminals()) {
    const auto& n = g.node(id);
    p.of(n.owner).set(id, random_action_dist(rng, static_cast<int>(n.children.size())));
  }
  return p;
}

StrategyProfile random_pure_total_profile(const ExtensiveGame& g, std::mt19937_64& rng) {
  StrategyProfile p;
  p.s1.player = 1;
  p.s2.player = 2;
  for (int id : g.nonterminals()) {
    const auto& n = g.node(id);
    int arity = static_cast<int>(n.children.size());
    p.of(n.owner).set(id, ActionDist::point(arity, static_cast<int>(rng() % arity)));
  }
  return p;
}

std::vector<StrategyProfile> all_pure_total_profiles(const ExtensiveGame& g, size_t cap) {
  std::vector<int> nodes = g.nonterminals();
  std::vector<StrategyProfile> out;
  StrategyProfile cur;
  cur.s1.player = 1;
  cur.s2.player = 2;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == nodes.size()) {
      if (out.size() >= cap) throw TooLarge("pure total profile enumeration");
      out.push_back(cur);
      return;
    }
    const auto& n = g.node(nodes[i]);
    int arity = static_cast<int>(n.children.size());
    for (int a = 0; a < arity; ++a) {
      cur.of(n.owner).set(nodes[i], ActionDist::point(arity, a));
      rec(i + 1);
    }
    cur.of(n.owner).choice.erase(nodes[i]);
  };
  rec(0);
  return out;
}

ConstraintSet random_constraint_set(const ExtensiveGame& g, std::mt19937_64& rng, int max_size) {
  ConstraintSet t;
  for (Player p : {1, 2}) {
    auto pure = enumerate_pure_reduced(g, p);
    std::shuffle(pure.begin(), pure.end(), rng);
    int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
    size = std::min<int>(size, static_cast<int>(pure.size()));
    t.of(p).assign(pure.begin(), pure.begin() + size);
  }
  return t;
}

MixedReducedStrategy random_mixed_reduced(const ExtensiveGame& g, Player p, std::mt19937_64& rng,
                                          int max_support) {
  auto pure = enumerate_pure_reduced(g, p);
  std::shuffle(pure.begin(), pure.end(), rng);
  int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_support));
  size = std::min<int>(size, static_cast<int>(pure.size()));
  ActionDist weights = random_action_dist(rng, size);
  MixedReducedStrategy m;
  m.player = p;
  for (int i = 0; i < size; ++i)
    if (weights.w[i] > 0) m.support.emplace_back(pure[i], weights.w[i]);
  return m;
}

}  // namespace tfne
