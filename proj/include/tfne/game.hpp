#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tfne/rational.hpp"

namespace tfne {

using Player = int;  // 1 or 2

inline Player other_player(Player p) { return 3 - p; }

// Action labels are plain strings; the string representation matters
// (machines consume and emit it), so "abort" is just another label.
inline const std::string kAbort = "abort";

using History = std::vector<std::string>;  // action labels from the root

std::string history_key(const History& h);  // "/" for root, "a/b" otherwise

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAHistory : GameError {
  explicit NotAHistory(const std::string& k) : GameError("not a history: " + k) {}
};
struct TerminalHistory : GameError {
  explicit TerminalHistory(const std::string& k) : GameError("terminal history: " + k) {}
};
struct NonGenericGame : GameError {
  explicit NonGenericGame(const std::string& what) : GameError("non-generic game: " + what) {}
};
struct TooLarge : GameError {
  explicit TooLarge(const std::string& what) : GameError("game too large: " + what) {}
};

// A finite 2-player perfect-information game tree. Nodes are stored in a
// flat vector; node 0 is the root and children always follow their parent,
// so forward iteration is a top-down traversal.
class ExtensiveGame {
 public:
  struct Node {
    int parent = -1;
    int action_index = -1;  // index into parent's children
    std::string label;      // action label leading here ("" at root)
    int round = 1;          // 1-based depth index
    Player owner = 0;       // 0 at terminal nodes
    std::vector<std::pair<std::string, int>> children;  // label -> node id
    bool terminal = false;
    Rational u1, u2;

    const Rational& payoff(Player p) const { return p == 1 ? u1 : u2; }
  };

  ExtensiveGame() { nodes_.push_back(Node{}); }

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  bool alternating() const { return alternating_; }
  void set_alternating(bool v) { alternating_ = v; }

  // Tree construction. add_child returns the new node id.
  int add_child(int parent, const std::string& label);
  void make_terminal(int id, Rational u1, Rational u2);
  void set_owner(int id, Player p);

  int child(int id, const std::string& label) const;  // -1 if absent
  History path(int id) const;
  // Resolves a path to a node id; throws NotAHistory.
  int find(const History& h) const;

  int max_round() const;           // depth of the deepest node
  int last_decision_round() const; // deepest round with a non-terminal node
  Player round_owner(int round) const;  // requires alternating()

  std::vector<int> terminals() const;
  std::vector<int> nonterminals() const;

  // Empty iff every structural invariant holds; each violation names the
  // offending history.
  std::vector<std::string> validate() const;

  // True when each player's payoffs are pairwise distinct across leaves.
  bool is_generic() const;
  bool is_zero_sum() const;

  // The game restarted at h (h non-terminal). Throws NotAHistory /
  // TerminalHistory.
  ExtensiveGame subgame(int id) const;

 private:
  std::vector<Node> nodes_;
  bool alternating_ = false;
};

std::vector<std::string> validate_game(const ExtensiveGame& g);

// A bimatrix game; payoff(r, c) is the pair for (row action r, col action c).
struct NormalFormGame {
  std::vector<std::string> row_actions;
  std::vector<std::string> col_actions;
  std::vector<std::vector<std::pair<Rational, Rational>>> payoffs;

  int rows() const { return static_cast<int>(row_actions.size()); }
  int cols() const { return static_cast<int>(col_actions.size()); }
  const std::pair<Rational, Rational>& at(int r, int c) const { return payoffs.at(r).at(c); }
  std::vector<std::string> validate() const;
};

// A mixed profile of a NormalFormGame with its expected payoffs.
struct MixedProfile {
  std::vector<Rational> row;  // weights over row actions
  std::vector<Rational> col;  // weights over col actions
};

std::pair<Rational, Rational> expected_payoffs(const NormalFormGame& nf, const MixedProfile& mp);

// An extensive game whose designated leaves carry a normal-form game plus an
// assigned mixed profile that is meant to be a NE of that game.
struct GSMLGame {
  ExtensiveGame tree;
  struct Leaf {
    int node = -1;
    NormalFormGame game;
    MixedProfile assigned;
  };
  std::vector<Leaf> leaves;  // tree payoffs at these nodes are placeholders

  std::vector<std::string> validate() const;
};

}  // namespace tfne
