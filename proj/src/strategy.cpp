#include "tfne/strategy.hpp"

#include <algorithm>
#include <functional>

namespace tfne {

ActionDist ActionDist::point(int action_count, int action_index) {
  ActionDist d;
  d.w.assign(action_count, Rational(0));
  d.w.at(action_index) = 1;
  return d;
}

ActionDist ActionDist::uniform(int action_count) {
  ActionDist d;
  d.w.assign(action_count, Rational(1, action_count));
  return d;
}

bool ActionDist::is_point() const { return point_index() != -1; }

int ActionDist::point_index() const {
  int idx = -1;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1 && idx == -1)
      idx = static_cast<int>(i);
    else if (w[i] != 0)
      return -1;
  }
  return idx;
}

const ActionDist& ReducedStrategy::at(int node) const {
  auto it = choice.find(node);
  if (it == choice.end()) throw UncoveredHistory("node " + std::to_string(node));
  return it->second;
}

Rational OutcomeDistribution::at(int node) const {
  auto it = prob.find(node);
  return it == prob.end() ? Rational(0) : it->second;
}

Rational OutcomeDistribution::total() const {
  Rational t = 0;
  for (const auto& [n, p] : prob) t += p;
  return t;
}

namespace {

// Marks, per node, whether all own-player ancestors continue toward it with
// positive probability under s.
std::vector<char> reachable_under_own(const ExtensiveGame& g, const ReducedStrategy& s) {
  std::vector<char> ok(g.size(), 0);
  ok[0] = 1;
  for (int id = 1; id < g.size(); ++id) {
    const auto& n = g.node(id);
    const auto& parent = g.node(n.parent);
    if (!ok[n.parent]) continue;
    if (parent.owner != s.player) {
      ok[id] = 1;
      continue;
    }
    if (!s.has(n.parent)) continue;
    const auto& d = s.at(n.parent);
    if (static_cast<int>(d.w.size()) == static_cast<int>(parent.children.size()) &&
        d.w[n.action_index] > 0)
      ok[id] = 1;
  }
  return ok;
}

}  // namespace

std::vector<int> canonical_domain(const ExtensiveGame& g, const ReducedStrategy& s) {
  auto ok = reachable_under_own(g, s);
  std::vector<int> out;
  for (int id = 0; id < g.size(); ++id) {
    const auto& n = g.node(id);
    if (!n.terminal && n.owner == s.player && ok[id]) out.push_back(id);
  }
  return out;
}

std::vector<std::string> validate_strategy(const ExtensiveGame& g, const ReducedStrategy& s) {
  std::vector<std::string> v;
  if (s.player != 1 && s.player != 2) {
    v.push_back("player must be 1 or 2");
    return v;
  }
  for (const auto& [id, d] : s.choice) {
    if (id < 0 || id >= g.size()) {
      v.push_back("unknown node " + std::to_string(id));
      continue;
    }
    const auto& n = g.node(id);
    std::string at = history_key(g.path(id));
    if (n.terminal || n.owner != s.player) {
      v.push_back("choice at history not owned by player: " + at);
      continue;
    }
    if (d.w.size() != n.children.size()) {
      v.push_back("distribution arity mismatch at " + at);
      continue;
    }
    Rational sum = 0;
    for (const auto& w : d.w) {
      if (w < 0) v.push_back("negative weight at " + at);
      sum += w;
    }
    if (sum != 1) v.push_back("weights do not sum to 1 at " + at);
  }
  for (int id : canonical_domain(g, s))
    if (!s.has(id)) v.push_back("canonical domain not covered at " + history_key(g.path(id)));
  return v;
}

bool is_canonical_reduced(const ExtensiveGame& g, const ReducedStrategy& s) {
  if (!validate_strategy(g, s).empty()) return false;
  auto dom = canonical_domain(g, s);
  if (dom.size() != s.choice.size()) return false;
  for (int id : dom)
    if (!s.has(id)) return false;
  return true;
}

ReducedStrategy canonicalize(const ExtensiveGame& g, const ReducedStrategy& s) {
  ReducedStrategy out;
  out.player = s.player;
  for (int id : canonical_domain(g, s))
    if (s.has(id)) out.set(id, s.at(id));
  return out;
}

bool is_total(const ExtensiveGame& g, const ReducedStrategy& s) {
  for (int id = 0; id < g.size(); ++id) {
    const auto& n = g.node(id);
    if (!n.terminal && n.owner == s.player && !s.has(id)) return false;
  }
  return true;
}

namespace {

void walk_outcome(const ExtensiveGame& g, const StrategyProfile& p, int id, const Rational& reach,
                  OutcomeDistribution& out) {
  const auto& n = g.node(id);
  if (n.terminal) {
    out.prob[id] += reach;
    return;
  }
  const ReducedStrategy& s = p.of(n.owner);
  if (!s.has(id)) throw UncoveredHistory(history_key(g.path(id)));
  const ActionDist& d = s.at(id);
  for (size_t a = 0; a < n.children.size(); ++a) {
    if (d.w.at(a) == 0) continue;
    walk_outcome(g, p, n.children[a].second, reach * d.w[a], out);
  }
}

}  // namespace

Rational reach_probability(const ExtensiveGame& g, const StrategyProfile& p, int node) {
  Rational r = 1;
  int id = node;
  while (id != 0) {
    const auto& n = g.node(id);
    const auto& parent = g.node(n.parent);
    const ReducedStrategy& s = p.of(parent.owner);
    if (!s.has(n.parent)) return 0;
    r *= s.at(n.parent).w.at(n.action_index);
    if (r == 0) return 0;
    id = n.parent;
  }
  return r;
}

OutcomeDistribution outcome_distribution(const ExtensiveGame& g, const StrategyProfile& p) {
  OutcomeDistribution out;
  walk_outcome(g, p, g.root(), Rational(1), out);
  return out;
}

Rational expected_payoff(const ExtensiveGame& g, const StrategyProfile& p, Player i) {
  Rational u = 0;
  for (const auto& [leaf, pr] : outcome_distribution(g, p).prob) u += pr * g.node(leaf).payoff(i);
  return u;
}

OutcomeDistribution conditional_outcome(const ExtensiveGame& g, const StrategyProfile& p, int h) {
  if (g.node(h).terminal) throw TerminalHistory(history_key(g.path(h)));
  OutcomeDistribution out;
  walk_outcome(g, p, h, Rational(1), out);
  return out;
}

Rational conditional_payoff(const ExtensiveGame& g, const StrategyProfile& p, int h, Player i) {
  if (g.node(h).terminal) return g.node(h).payoff(i);
  Rational u = 0;
  for (const auto& [leaf, pr] : conditional_outcome(g, p, h).prob) u += pr * g.node(leaf).payoff(i);
  return u;
}

ReducedStrategy mixed_to_behavioral(const ExtensiveGame& g, const MixedReducedStrategy& m) {
  ReducedStrategy out;
  out.player = m.player;
  for (int id = 0; id < g.size(); ++id) {
    const auto& n = g.node(id);
    if (n.terminal || n.owner != m.player) continue;
    // Weight of the pure strategies whose domain contains this node, i.e.
    // whose own earlier choices lead here.
    Rational reach = 0;
    std::vector<Rational> action(n.children.size(), Rational(0));
    for (const auto& [pure, w] : m.support) {
      if (w == 0 || !pure.has(id)) continue;
      reach += w;
      int a = pure.at(id).point_index();
      if (a < 0) throw GameError("mixed support element is not deterministic");
      action.at(a) += w;
    }
    if (reach == 0) continue;
    ActionDist d;
    d.w.resize(action.size());
    for (size_t a = 0; a < action.size(); ++a) d.w[a] = action[a] / reach;
    out.set(id, std::move(d));
  }
  return out;
}

std::vector<ReducedStrategy> enumerate_pure_reduced(const ExtensiveGame& g, Player p, size_t cap) {
  std::vector<ReducedStrategy> out;
  ReducedStrategy base;
  base.player = p;
  // Depth-first over the tree: at own nodes branch over actions; at opponent
  // nodes explore every child. Own nodes sharing an opponent-branching point
  // are independent, so we fold the recursion over a worklist.
  std::function<void(ReducedStrategy&, std::vector<int>&)> rec = [&](ReducedStrategy& cur,
                                                                     std::vector<int>& frontier) {
    int id = -1;
    while (!frontier.empty()) {
      int candidate = frontier.back();
      frontier.pop_back();
      const auto& n = g.node(candidate);
      if (n.terminal) continue;
      if (n.owner == p) {
        id = candidate;
        break;
      }
      for (const auto& [l, c] : n.children) frontier.push_back(c);
    }
    if (id == -1) {
      if (out.size() >= cap) throw TooLarge("pure reduced strategy enumeration");
      out.push_back(cur);
      return;
    }
    const auto& n = g.node(id);
    for (size_t a = 0; a < n.children.size(); ++a) {
      cur.set(id, ActionDist::point(static_cast<int>(n.children.size()), static_cast<int>(a)));
      std::vector<int> next = frontier;
      next.push_back(n.children[a].second);
      rec(cur, next);
    }
    cur.choice.erase(id);
  };
  std::vector<int> frontier{g.root()};
  rec(base, frontier);
  return out;
}

bool outcome_equivalent(const ExtensiveGame& g, const ReducedStrategy& a,
                        const ReducedStrategy& b) {
  if (a.player != b.player) return false;
  Player opp = other_player(a.player);
  for (const auto& os : enumerate_pure_reduced(g, opp)) {
    StrategyProfile pa, pb;
    pa.of(a.player) = a;
    pa.of(opp) = os;
    pb.of(a.player) = b;
    pb.of(opp) = os;
    if (outcome_distribution(g, pa).prob != outcome_distribution(g, pb).prob) return false;
  }
  return true;
}

RoundStrategy round_component(const ExtensiveGame& g, const ReducedStrategy& s, int round) {
  RoundStrategy rc;
  rc.player = s.player;
  rc.round = round;
  for (int id : canonical_domain(g, s)) {
    if (g.node(id).round == round && s.has(id)) rc.at[id] = s.at(id);
  }
  return rc;
}

bool prefix_equal(const ExtensiveGame& g, const ReducedStrategy& a, const ReducedStrategy& b,
                  int round) {
  for (int r = 1; r < round; ++r)
    if (!(round_component(g, a, r) == round_component(g, b, r))) return false;
  return true;
}

}  // namespace tfne
