#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfne/game.hpp"

using namespace tfne;

namespace {

// P1 chooses in/out; after in, P2 chooses fight/accept.
ExtensiveGame entry_game() {
  ExtensiveGame g;
  g.set_owner(g.root(), 1);
  int in = g.add_child(g.root(), "in");
  int out = g.add_child(g.root(), "out");
  g.make_terminal(out, 0, 2);
  g.set_owner(in, 2);
  g.make_terminal(g.add_child(in, "fight"), -1, -1);
  g.make_terminal(g.add_child(in, "accept"), 1, 1);
  g.set_alternating(true);
  return g;
}

}  // namespace

TEST_CASE("tree construction and lookup") {
  ExtensiveGame g = entry_game();
  CHECK(g.size() == 5);
  CHECK(g.validate().empty());
  CHECK(g.node(g.root()).owner == 1);

  int in = g.child(g.root(), "in");
  REQUIRE(in != -1);
  CHECK(g.node(in).round == 2);
  CHECK(g.node(in).owner == 2);
  CHECK(g.child(in, "fight") != -1);
  CHECK(g.child(in, "nope") == -1);

  CHECK(history_key({}) == "/");
  CHECK(history_key({"in", "accept"}) == "in/accept");
  CHECK(g.find({"in", "accept"}) == g.child(in, "accept"));
  CHECK(g.path(g.child(in, "accept")) == History{"in", "accept"});
  CHECK_THROWS_AS(g.find({"in", "nope"}), NotAHistory);
}

TEST_CASE("rounds and ownership") {
  ExtensiveGame g = entry_game();
  CHECK(g.max_round() == 3);
  CHECK(g.last_decision_round() == 2);
  CHECK(g.alternating());
  CHECK(g.round_owner(1) == 1);
  CHECK(g.round_owner(2) == 2);
}

TEST_CASE("children follow parents in the flat layout") {
  ExtensiveGame g = entry_game();
  for (int id = 1; id < g.size(); ++id) CHECK(g.node(id).parent < id);
}

TEST_CASE("payoff classification") {
  ExtensiveGame h;
  h.set_owner(h.root(), 1);
  h.make_terminal(h.add_child(h.root(), "l"), 1, 4);
  h.make_terminal(h.add_child(h.root(), "r"), 2, 3);
  CHECK(h.is_generic());

  ExtensiveGame z;
  z.set_owner(z.root(), 1);
  z.make_terminal(z.add_child(z.root(), "l"), 1, -1);
  z.make_terminal(z.add_child(z.root(), "r"), -2, 2);
  CHECK(z.is_zero_sum());
  CHECK_FALSE(h.is_zero_sum());
}

TEST_CASE("entry game is generic") {
  // Every per-player payoff list is duplicate-free: {-1, 1, 0} and {-1, 1, 2}.
  CHECK(entry_game().is_generic());
}

TEST_CASE("make_terminal may overwrite payoffs") {
  ExtensiveGame g;
  g.set_owner(g.root(), 1);
  int l = g.add_child(g.root(), "l");
  g.make_terminal(l, 1, 2);
  g.make_terminal(l, 5, 7);
  g.make_terminal(g.add_child(g.root(), "r"), 0, 0);
  CHECK(g.node(l).u1 == 5);
  CHECK(g.node(l).u2 == 7);
}

TEST_CASE("subgame extraction") {
  ExtensiveGame g = entry_game();
  int in = g.child(g.root(), "in");
  ExtensiveGame sub = g.subgame(in);
  CHECK(sub.size() == 3);
  CHECK(sub.node(sub.root()).owner == 2);
  CHECK(sub.node(sub.child(sub.root(), "accept")).u1 == 1);
  CHECK_THROWS_AS(g.subgame(g.child(g.root(), "out")), TerminalHistory);
}

TEST_CASE("validation flags structural problems") {
  ExtensiveGame g;
  // Root has no owner and no children.
  CHECK_FALSE(g.validate().empty());

  ExtensiveGame h;
  h.set_owner(h.root(), 1);
  h.add_child(h.root(), "l");  // non-terminal child without owner or children
  CHECK_FALSE(h.validate().empty());
}

TEST_CASE("normal-form expected payoffs") {
  // Battle of the sexes.
  NormalFormGame nf;
  nf.row_actions = {"a", "b"};
  nf.col_actions = {"a", "b"};
  nf.payoffs = {{{2, 1}, {0, 0}}, {{0, 0}, {1, 2}}};
  CHECK(nf.validate().empty());

  MixedProfile pure{{1, 0}, {1, 0}};
  auto [u1, u2] = expected_payoffs(nf, pure);
  CHECK(u1 == 2);
  CHECK(u2 == 1);

  MixedProfile mixed{{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}};
  auto [m1, m2] = expected_payoffs(nf, mixed);
  CHECK(m1 == Rational(2, 3));
  CHECK(m2 == Rational(2, 3));
}
