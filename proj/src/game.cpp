#include "tfne/game.hpp"

#include <algorithm>
#include <set>

namespace tfne {

std::string history_key(const History& h) {
  if (h.empty()) return "/";
  std::string key;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) key += '/';
    key += h[i];
  }
  return key;
}

int ExtensiveGame::add_child(int parent, const std::string& label) {
  Node& p = nodes_.at(parent);
  if (p.terminal) throw TerminalHistory(history_key(path(parent)));
  if (child(parent, label) != -1)
    throw GameError("duplicate action label '" + label + "' at " + history_key(path(parent)));
  Node c;
  c.parent = parent;
  c.action_index = static_cast<int>(p.children.size());
  c.label = label;
  c.round = p.round + 1;
  int id = static_cast<int>(nodes_.size());
  nodes_.at(parent).children.emplace_back(label, id);
  nodes_.push_back(std::move(c));
  return id;
}

void ExtensiveGame::make_terminal(int id, Rational u1, Rational u2) {
  Node& n = nodes_.at(id);
  if (!n.children.empty()) throw GameError("terminal node has children: " + history_key(path(id)));
  n.terminal = true;
  n.owner = 0;
  n.u1 = std::move(u1);
  n.u2 = std::move(u2);
}

void ExtensiveGame::set_owner(int id, Player p) {
  if (p != 1 && p != 2) throw GameError("owner must be 1 or 2");
  Node& n = nodes_.at(id);
  if (n.terminal) throw TerminalHistory(history_key(path(id)));
  n.owner = p;
}

int ExtensiveGame::child(int id, const std::string& label) const {
  for (const auto& [l, c] : nodes_.at(id).children)
    if (l == label) return c;
  return -1;
}

History ExtensiveGame::path(int id) const {
  History h;
  for (int n = id; n != 0; n = nodes_.at(n).parent) h.push_back(nodes_.at(n).label);
  std::reverse(h.begin(), h.end());
  return h;
}

int ExtensiveGame::find(const History& h) const {
  int id = 0;
  for (const auto& label : h) {
    id = child(id, label);
    if (id == -1) throw NotAHistory(history_key(h));
  }
  return id;
}

int ExtensiveGame::max_round() const {
  int m = 1;
  for (const auto& n : nodes_) m = std::max(m, n.round);
  return m;
}

int ExtensiveGame::last_decision_round() const {
  int m = 0;
  for (const auto& n : nodes_)
    if (!n.terminal) m = std::max(m, n.round);
  return m;
}

Player ExtensiveGame::round_owner(int round) const {
  if (!alternating_) throw GameError("round_owner requires an alternating game");
  for (const auto& n : nodes_)
    if (!n.terminal && n.round == round) return n.owner;
  throw GameError("no decision node in round " + std::to_string(round));
}

std::vector<int> ExtensiveGame::terminals() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (nodes_[i].terminal) out.push_back(i);
  return out;
}

std::vector<int> ExtensiveGame::nonterminals() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (!nodes_[i].terminal) out.push_back(i);
  return out;
}

std::vector<std::string> ExtensiveGame::validate() const {
  std::vector<std::string> violations;
  std::vector<int> round_owner_seen;  // per round, 0 = none yet
  for (int i = 0; i < size(); ++i) {
    const Node& n = nodes_[i];
    std::string at = history_key(path(i));
    if (n.terminal) {
      if (!n.children.empty()) violations.push_back("terminal history with actions: " + at);
      continue;
    }
    if (n.children.empty()) violations.push_back("non-terminal history without actions or payoffs: " + at);
    if (n.owner != 1 && n.owner != 2) violations.push_back("non-terminal history without owner: " + at);
    std::set<std::string> labels;
    for (const auto& [l, c] : n.children) {
      if (!labels.insert(l).second) violations.push_back("duplicate action label '" + l + "' at " + at);
      const Node& cn = nodes_.at(c);
      if (cn.parent != i || cn.label != l) violations.push_back("child linkage broken under " + at);
    }
    if (alternating_) {
      if (static_cast<int>(round_owner_seen.size()) < n.round) round_owner_seen.resize(n.round, 0);
      int& seen = round_owner_seen[n.round - 1];
      if (seen == 0)
        seen = n.owner;
      else if (seen != n.owner)
        violations.push_back("round " + std::to_string(n.round) + " has mixed owners (at " + at + ")");
    }
  }
  if (alternating_) {
    for (size_t r = 1; r < round_owner_seen.size(); ++r) {
      if (round_owner_seen[r] != 0 && round_owner_seen[r - 1] != 0 &&
          round_owner_seen[r] == round_owner_seen[r - 1])
        violations.push_back("rounds " + std::to_string(r) + " and " + std::to_string(r + 1) +
                             " owned by the same player");
    }
  }
  return violations;
}

bool ExtensiveGame::is_generic() const {
  std::set<Rational> seen1, seen2;
  for (const auto& n : nodes_) {
    if (!n.terminal) continue;
    if (!seen1.insert(n.u1).second) return false;
    if (!seen2.insert(n.u2).second) return false;
  }
  return true;
}

bool ExtensiveGame::is_zero_sum() const {
  for (const auto& n : nodes_)
    if (n.terminal && n.u1 + n.u2 != 0) return false;
  return true;
}

ExtensiveGame ExtensiveGame::subgame(int id) const {
  const Node& start = nodes_.at(id);
  if (start.terminal) throw TerminalHistory(history_key(path(id)));
  ExtensiveGame sub;
  sub.alternating_ = alternating_;
  // map from this game's node ids to the subgame's
  std::vector<std::pair<int, int>> stack{{id, 0}};
  sub.nodes_[0].owner = start.owner;
  while (!stack.empty()) {
    auto [src, dst] = stack.back();
    stack.pop_back();
    const Node& s = nodes_.at(src);
    if (s.terminal) {
      sub.make_terminal(dst, s.u1, s.u2);
      continue;
    }
    sub.set_owner(dst, s.owner);
    for (const auto& [label, c] : s.children) {
      int nd = sub.add_child(dst, label);
      stack.emplace_back(c, nd);
    }
  }
  return sub;
}

std::vector<std::string> validate_game(const ExtensiveGame& g) { return g.validate(); }

std::vector<std::string> NormalFormGame::validate() const {
  std::vector<std::string> v;
  if (row_actions.empty() || col_actions.empty()) v.push_back("empty action set");
  if (static_cast<int>(payoffs.size()) != rows()) v.push_back("payoff row count mismatch");
  for (const auto& row : payoffs)
    if (static_cast<int>(row.size()) != cols()) v.push_back("payoff column count mismatch");
  return v;
}

std::pair<Rational, Rational> expected_payoffs(const NormalFormGame& nf, const MixedProfile& mp) {
  Rational u1 = 0, u2 = 0;
  for (int r = 0; r < nf.rows(); ++r) {
    if (mp.row.at(r) == 0) continue;
    for (int c = 0; c < nf.cols(); ++c) {
      Rational w = mp.row[r] * mp.col.at(c);
      if (w == 0) continue;
      u1 += w * nf.at(r, c).first;
      u2 += w * nf.at(r, c).second;
    }
  }
  return {u1, u2};
}

std::vector<std::string> GSMLGame::validate() const {
  std::vector<std::string> v = tree.validate();
  for (const auto& leaf : leaves) {
    if (leaf.node < 0 || leaf.node >= tree.size() || !tree.node(leaf.node).terminal) {
      v.push_back("simultaneous leaf is not a terminal history");
      continue;
    }
    auto nv = leaf.game.validate();
    v.insert(v.end(), nv.begin(), nv.end());
    Rational sr = 0, sc = 0;
    for (const auto& w : leaf.assigned.row) sr += w;
    for (const auto& w : leaf.assigned.col) sc += w;
    if (static_cast<int>(leaf.assigned.row.size()) != leaf.game.rows() || sr != 1 ||
        static_cast<int>(leaf.assigned.col.size()) != leaf.game.cols() || sc != 1)
      v.push_back("assigned profile invalid at leaf " + history_key(tree.path(leaf.node)));
  }
  return v;
}

}  // namespace tfne
