#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfne/equilibria.hpp"

using namespace tfne;

namespace {

NormalFormGame battle_of_sexes() {
  NormalFormGame nf;
  nf.row_actions = {"a", "b"};
  nf.col_actions = {"a", "b"};
  nf.payoffs = {{{2, 1}, {0, 0}}, {{0, 0}, {1, 2}}};
  return nf;
}

NormalFormGame matching_pennies() {
  NormalFormGame nf;
  nf.row_actions = {"h", "t"};
  nf.col_actions = {"h", "t"};
  nf.payoffs = {{{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}}};
  return nf;
}

// P1 in/out; after in, P2 fight/accept.
ExtensiveGame entry_game() {
  ExtensiveGame g;
  g.set_alternating(true);
  g.set_owner(g.root(), 1);
  int in = g.add_child(g.root(), "in");
  g.make_terminal(g.add_child(g.root(), "out"), 0, 2);
  g.set_owner(in, 2);
  g.make_terminal(g.add_child(in, "fight"), -1, -1);
  g.make_terminal(g.add_child(in, "accept"), 1, 1);
  return g;
}

StrategyProfile entry_profile(const ExtensiveGame& g, int p1_action, int p2_action) {
  StrategyProfile p;
  p.s1.player = 1;
  p.s2.player = 2;
  p.s1.set(g.root(), ActionDist::point(2, p1_action));
  p.s2.set(g.find({"in"}), ActionDist::point(2, p2_action));
  return p;
}

}  // namespace

TEST_CASE("bimatrix enumeration: battle of the sexes") {
  BimatrixNEList nes = bimatrix_ne_enumerate(battle_of_sexes());
  REQUIRE(nes.list.size() == 3);
  CHECK_FALSE(nes.degenerate);

  bool pure_aa = false, pure_bb = false, mixed = false;
  for (const auto& ne : nes.list) {
    if (ne.u1 == 2 && ne.u2 == 1) pure_aa = true;
    if (ne.u1 == 1 && ne.u2 == 2) pure_bb = true;
    if (ne.u1 == Rational(2, 3) && ne.u2 == Rational(2, 3)) {
      mixed = true;
      CHECK(ne.profile.row == std::vector<Rational>{Rational(2, 3), Rational(1, 3)});
      CHECK(ne.profile.col == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
    }
  }
  CHECK(pure_aa);
  CHECK(pure_bb);
  CHECK(mixed);

  CHECK(worst_ne_for(battle_of_sexes(), 1, nes).u1 == Rational(2, 3));
  CHECK(worst_ne_for(battle_of_sexes(), 2, nes).u2 == Rational(2, 3));
}

TEST_CASE("bimatrix enumeration: matching pennies") {
  BimatrixNEList nes = bimatrix_ne_enumerate(matching_pennies());
  REQUIRE(nes.list.size() == 1);
  const auto& ne = nes.list.front();
  CHECK(ne.profile.row == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(ne.profile.col == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(ne.u1 == 0);
  CHECK(ne.u2 == 0);
}

TEST_CASE("degenerate games are flagged") {
  NormalFormGame nf;
  nf.row_actions = {"a", "b"};
  nf.col_actions = {"a", "b"};
  // Column player is indifferent everywhere.
  nf.payoffs = {{{1, 0}, {1, 0}}, {{0, 0}, {2, 0}}};
  CHECK(bimatrix_ne_enumerate(nf).degenerate);
}

TEST_CASE("backward induction and SPE") {
  ExtensiveGame g = entry_game();
  StrategyProfile spe = spe_backward_induction(g);
  CHECK(spe.s1.at(g.root()).point_index() == 0);                // in
  CHECK(spe.s2.at(g.find({"in"})).point_index() == 1);          // accept
  CHECK(expected_payoff(g, spe, 1) == 1);
  CHECK(is_spe(g, spe, 0).holds);

  // (out, fight) is a Nash equilibrium but not subgame perfect.
  StrategyProfile nash = entry_profile(g, 1, 0);
  CHECK(is_epsilon_ne(g, nash, 0).holds);
  NEVerdict v = is_spe(g, nash, 0);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->player == 2);
  CHECK(v.witness->site == g.find({"in"}));
  CHECK(v.witness->gain == 2);  // accept pays 1, fight pays -1
}

TEST_CASE("unconstrained epsilon-NE") {
  ExtensiveGame g = entry_game();
  // (in, fight) is not an equilibrium: P1 gains 1 by playing out.
  NEVerdict v = is_epsilon_ne(g, entry_profile(g, 0, 0), 0);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->player == 1);
  CHECK(v.witness->gain == 1);
  // P2 gains 2 by accepting, so the profile is a 2-NE but not a 1-NE.
  CHECK(is_epsilon_ne(g, entry_profile(g, 0, 0), 2).holds);
}

TEST_CASE("best response by backward induction") {
  ExtensiveGame g = entry_game();
  StrategyProfile p = entry_profile(g, 0, 0);  // P2 fights
  auto [v1, br1] = best_response(g, p.s2, 1);
  CHECK(v1 == 0);  // out
  CHECK(br1.at(g.root()).point_index() == 1);
  auto [v2, br2] = best_response(g, p.s1, 2, g.find({"in"}));
  CHECK(v2 == 1);  // accept
}

TEST_CASE("constrained epsilon-NE membership and checks") {
  ExtensiveGame g = entry_game();
  ConstraintSet t;
  t.t1 = {entry_profile(g, 0, 0).s1, entry_profile(g, 1, 0).s1};  // in, out
  t.t2 = {entry_profile(g, 0, 0).s2, entry_profile(g, 0, 1).s2};  // fight, accept

  CHECK(t.member_index(g, t.t1[1]) == 1);
  StrategyProfile outside;
  outside.s1.player = 1;
  outside.s1.set(g.root(), ActionDist::uniform(2));
  outside.s2 = t.t2[0];
  CHECK(t.member_index(g, outside.s1) == -1);
  CHECK_THROWS_AS(is_epsilon_ne(g, t, outside, Rational(0)), ProfileNotInConstraints);

  // (out, fight) and (in, accept) are the constrained equilibria.
  CHECK(is_epsilon_ne(g, StrategyProfile{t.t1[1], t.t2[0]}, Rational(0)).holds);
  CHECK(is_epsilon_ne(g, t, StrategyProfile{t.t1[0], t.t2[1]}, Rational(0)).holds);
  CHECK_FALSE(is_epsilon_ne(g, t, StrategyProfile{t.t1[0], t.t2[0]}, Rational(0)).holds);
}

TEST_CASE("weak Pareto optimality over the constraint sets") {
  ExtensiveGame g = entry_game();
  ConstraintSet t;
  t.t1 = {entry_profile(g, 0, 0).s1, entry_profile(g, 1, 0).s1};
  t.t2 = {entry_profile(g, 0, 0).s2, entry_profile(g, 0, 1).s2};

  // (in, accept) pays (1,1); nothing strictly dominates it for both players.
  CHECK(is_weakly_pareto_optimal(g, t, StrategyProfile{t.t1[0], t.t2[1]}).holds);
  // (in, fight) pays (-1,-1) and is dominated by (in, accept).
  ParetoVerdict v = is_weakly_pareto_optimal(g, t, StrategyProfile{t.t1[0], t.t2[0]});
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
}

TEST_CASE("epsilon-safety") {
  ExtensiveGame g = entry_game();
  ConstraintSet t;
  t.t1 = {entry_profile(g, 0, 0).s1, entry_profile(g, 1, 0).s1};
  t.t2 = {entry_profile(g, 0, 0).s2, entry_profile(g, 0, 1).s2};

  // At (out, accept), P1 switching to in keeps P2 at >= 1 - eps only for
  // eps >= 1: out pays P2 2, in/accept pays 1.
  StrategyProfile p{t.t1[1], t.t2[1]};
  CHECK_FALSE(is_epsilon_safe(g, t, p, Rational(1, 2)).holds);
  CHECK(is_epsilon_safe(g, t, p, Rational(1)).holds);
  NEVerdict v = is_epsilon_safe(g, t, p, Rational(0));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->player == 1);
  CHECK(v.witness->gain == 1);  // the drop inflicted on P2
}

TEST_CASE("hull dominance over listed equilibrium payoffs") {
  BimatrixNEList nes = bimatrix_ne_enumerate(battle_of_sexes());
  // (3/2, 3/2) lies on the segment between (2,1) and (1,2): no hull point
  // strictly beats it in both coordinates.
  CHECK_FALSE(ce_hull_dominated(nes, {Rational(3, 2), Rational(3, 2)}).dominated);
  // (2/3, 2/3) is strictly dominated, e.g. by the midpoint of the pure NEs.
  HullDominance hd = ce_hull_dominated(nes, {Rational(2, 3), Rational(2, 3)});
  CHECK(hd.dominated);
  REQUIRE(hd.weights.size() == nes.list.size());
  Rational sum = 0, d1 = 0, d2 = 0;
  for (size_t i = 0; i < hd.weights.size(); ++i) {
    CHECK(hd.weights[i] >= 0);
    sum += hd.weights[i];
    d1 += hd.weights[i] * nes.list[i].u1;
    d2 += hd.weights[i] * nes.list[i].u2;
  }
  CHECK(sum == 1);
  CHECK(d1 > Rational(2, 3));
  CHECK(d2 > Rational(2, 3));
  // A vertex dominator is found directly.
  CHECK(ce_hull_dominated(nes, {Rational(0), Rational(0)}).dominated);
}
