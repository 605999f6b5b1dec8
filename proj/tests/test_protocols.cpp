#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfne/protocols.hpp"

using namespace tfne;

namespace {

NormalFormGame battle_of_sexes() {
  NormalFormGame nf;
  nf.row_actions = {"a", "b"};
  nf.col_actions = {"a", "b"};
  nf.payoffs = {{{2, 1}, {0, 0}}, {{0, 0}, {1, 2}}};
  return nf;
}

const MachineSpec& by_name(const std::vector<MachineSpec>& family, const std::string& name) {
  for (const auto& m : family)
    if (m.name == name) return m;
  throw std::runtime_error("no machine named " + name);
}

}  // namespace

TEST_CASE("preimage game structure") {
  ToyOWP f = ToyOWP::identity(2);
  ExtensiveGame g = build_owp_game(2, f);
  CHECK(g.validate().empty());
  CHECK(g.node(g.root()).children.size() == 4);
  // P2 wins exactly on the preimage.
  CHECK(g.node(g.find({"01", "01"})).u2 == 1);
  CHECK(g.node(g.find({"01", "10"})).u2 == -1);

  ExtensiveGame m = build_modified_owp_game(2, f);
  CHECK(m.node(m.find({"00", "00"})).u1 == 2);
  CHECK(m.node(m.find({"00", "11"})).u1 == -2);
  CHECK(m.node(m.find({"11", "00"})).u1 == -2);
  CHECK(m.node(m.find({"11", "11"})).u2 == 1);
  CHECK(m.node(m.find({"11", "01"})).u1 == 1);
  CHECK_THROWS_AS(build_owp_game(1, f), TooLarge);
}

TEST_CASE("strategic representation by coin enumeration") {
  ToyOWP f = ToyOWP::identity(2);
  ExtensiveGame g = build_modified_owp_game(2, f);
  auto family2 = owp_p2_registry(2, f);

  ReducedStrategy zaz = strategic_representation(by_name(family2, "answer-zero-after-zero"), 2, g);
  CHECK(zaz.at(g.find({"00"})).point_index() ==
        g.node(g.find({"00", "00"})).action_index);
  CHECK(zaz.at(g.find({"10"})).w == ActionDist::uniform(4).w);

  ReducedStrategy inv = strategic_representation(by_name(family2, "brute-invert"), 2, g);
  for (const auto& y : {"01", "10", "11"})
    CHECK(inv.at(g.find({y})).point_index() ==
          g.node(g.find({y, y})).action_index);

  // P1 senders: a point message; the deep entries of other senders are
  // consistent with their own play only.
  auto family1 = owp_p1_registry(2);
  ReducedStrategy send = strategic_representation(by_name(family1, "send-01"), 2, g);
  CHECK(send.choice.size() == 1);
  CHECK(send.at(g.root()).point_index() == g.node(g.find({"01"})).action_index);
  ReducedStrategy unif = strategic_representation(by_name(family1, "send-uniform"), 2, g);
  CHECK(unif.at(g.root()).w == ActionDist::uniform(4).w);
}

TEST_CASE("guess filter and tractable sets") {
  ToyOWP f = ToyOWP::identity(2);
  ExtensiveGame g = build_owp_game(2, f);
  StrategyFilter filter = owp_guess_filter(f, g);
  auto family2 = owp_p2_registry(2, f);

  // The brute inverter guesses with probability 1 and is rejected at any
  // eps < 1/2; the honest-ish responders stay.
  CHECK_FALSE(filter(by_name(family2, "brute-invert"), 2, Rational(1, 4)).has_value());
  CHECK(filter(by_name(family2, "brute-invert"), 2, Rational(1, 2)).has_value());
  CHECK(filter(by_name(family2, "answer-uniform"), 2, Rational(0)).has_value());
  CHECK(filter(by_name(family2, "answer-zero-after-zero"), 2, Rational(0)).has_value());

  auto t2 = tractable_set(filter, family2, 2, Rational(1, 4), g);
  CHECK(t2.size() == 2);
  auto t1 = tractable_set(filter, owp_p1_registry(2), 2, Rational(1, 4), g);
  CHECK(t1.size() == 5);

  CoveringReport rep = covering_check(filter, family2, Rational(1, 4), {2, 3});
  for (const auto& e : rep.entries) {
    if (e.machine == "brute-invert")
      CHECK(e.first_stable_k == -1);
    else
      CHECK(e.first_stable_k == 2);
  }
}

TEST_CASE("modified preimage game: prescribed machines form a CTFNE instance") {
  ToyOWP f = ToyOWP::identity(2);
  ExtensiveGame g = build_modified_owp_game(2, f);
  StrategyFilter filter = owp_guess_filter(f, g);
  auto family1 = owp_p1_registry(2);
  auto family2 = owp_p2_registry(2, f);

  CtfneResult res =
      check_ctfne_at(g, 2, Rational(1, 4), by_name(family1, "send-00"),
                     by_name(family2, "answer-zero-after-zero"), filter, filter, family1, family2);
  CHECK(res.verdict.holds);
  CHECK(expected_payoff(g, res.profile, 1) == 2);
  CHECK(expected_payoff(g, res.profile, 2) == 2);

  // Prescribing a filtered machine is an error, not a failing verdict.
  CHECK_THROWS_AS(check_ctfne_at(g, 2, Rational(1, 4), by_name(family1, "send-00"),
                                 by_name(family2, "brute-invert"), filter, filter, family1,
                                 family2),
                  MachineFiltered);
}

TEST_CASE("coin-flip game structure and honest play") {
  IdealCommitment s(2);
  ExtensiveGame g = build_coinflip_game(s);
  CHECK(g.validate().empty());
  CHECK(g.alternating());
  // 8 commitments plus abort at the root.
  CHECK(g.node(g.root()).children.size() == 9);

  MachineSpec h1 = coinflip_honest_p1(s);
  MachineSpec h2 = coinflip_honest_p2();
  StrategyProfile honest{strategic_representation(h1, 2, g), strategic_representation(h2, 2, g)};
  CHECK(expected_payoff(g, honest, 1) == Rational(1, 2));
  CHECK(expected_payoff(g, honest, 2) == Rational(1, 2));

  // The root distribution is uniform over the 8 commitments, never abort.
  const ActionDist& root = honest.s1.at(g.root());
  int support = 0;
  for (const auto& w : root.w) support += w == Rational(1, 8) ? 1 : 0;
  CHECK(support == 8);
}

TEST_CASE("coin-flip filter and CTFNE instance") {
  IdealCommitment ideal(2);
  ExtensiveGame g = build_coinflip_game(ideal);
  ToyOWP f = ToyOWP::identity(2);
  auto family1 = coinflip_p1_registry(ideal);
  auto family2 = coinflip_p2_registry(f);
  StrategyFilter f1 = coinflip_filter(ideal);
  StrategyFilter f2 = coinflip_filter(ideal);

  CtfneResult res = check_ctfne_at(g, 2, Rational(0), coinflip_honest_p1(ideal),
                                   coinflip_honest_p2(), f1, f2, family1, family2);
  CHECK(res.verdict.holds);

  // Against the toy scheme the brute inverter reads every commitment and is
  // rejected at eps = 1/4.
  ToyCommitment toy(f);
  StrategyFilter toy_filter = coinflip_filter(toy);
  CHECK_FALSE(toy_filter(coinflip_brute_inverter(f), 2, Rational(1, 4)).has_value());
  CHECK(toy_filter(coinflip_honest_p2(), 2, Rational(0)).has_value());
  // On the ideal scheme the same machine degrades to a constant guess.
  CHECK(f2(coinflip_brute_inverter(f), 2, Rational(0)).has_value());
}

TEST_CASE("dyadic decomposition of a correlated equilibrium") {
  NormalFormGame nf = battle_of_sexes();
  BimatrixNEList nes = bimatrix_ne_enumerate(nf);
  REQUIRE(nes.list.size() == 3);
  int aa = -1, bb = -1;
  for (size_t i = 0; i < nes.list.size(); ++i) {
    if (nes.list[i].u1 == 2) aa = static_cast<int>(i);
    if (nes.list[i].u1 == 1) bb = static_cast<int>(i);
  }

  std::vector<Rational> weights(3, Rational(0));
  weights[static_cast<size_t>(aa)] = Rational(3, 4);
  weights[static_cast<size_t>(bb)] = Rational(1, 4);
  CEDecomposition d = decompose_ce(nf, nes, weights);
  CHECK(d.ell == 2);
  CHECK(d.sequence == std::vector<int>{aa, aa, aa, bb});
  CHECK(d.payoffs.first == Rational(7, 4));
  CHECK(d.payoffs.second == Rational(5, 4));

  weights[static_cast<size_t>(aa)] = Rational(1, 2);
  weights[static_cast<size_t>(bb)] = Rational(1, 2);
  CEDecomposition half = decompose_ce(nf, nes, weights);
  CHECK(half.ell == 1);
  CHECK(half.sequence.size() == 2);
  CHECK(half.payoffs.first == Rational(3, 2));

  weights[static_cast<size_t>(aa)] = Rational(1, 3);
  weights[static_cast<size_t>(bb)] = Rational(2, 3);
  CHECK_THROWS_AS(decompose_ce(nf, nes, weights), NotDyadic);
  weights[static_cast<size_t>(aa)] = Rational(1, 2);
  weights[static_cast<size_t>(bb)] = Rational(3, 4);  // sums to 5/4
  CHECK_THROWS_AS(decompose_ce(nf, nes, weights), NotAConvexCombination);
}

TEST_CASE("mediator-removal game: honest machines and deviants") {
  NormalFormGame nf = battle_of_sexes();
  BimatrixNEList nes = bimatrix_ne_enumerate(nf);
  int aa = -1, bb = -1;
  for (size_t i = 0; i < nes.list.size(); ++i) {
    if (nes.list[i].u1 == 2) aa = static_cast<int>(i);
    if (nes.list[i].u1 == 1) bb = static_cast<int>(i);
  }
  std::vector<Rational> weights(3, Rational(0));
  weights[static_cast<size_t>(aa)] = Rational(1, 2);
  weights[static_cast<size_t>(bb)] = Rational(1, 2);
  CEDecomposition d = decompose_ce(nf, nes, weights);

  IdealCommitment ideal(2);
  DhrGame dg = build_dhr_game(nf, nes, d, ideal);
  CHECK(dg.game.validate().empty());
  // Punishments are the mixed equilibrium, worst for both players here.
  CHECK(nes.list[static_cast<size_t>(dg.worst_ne_p1)].u1 == Rational(2, 3));
  CHECK(nes.list[static_cast<size_t>(dg.worst_ne_p2)].u2 == Rational(2, 3));

  ExtensiveGame pruned = prune_gsml(dg.game);
  MachineSpec h1 = dhr_honest_p1(d.ell, ideal);
  MachineSpec h2 = dhr_honest_p2(d.ell);
  StrategyProfile honest{strategic_representation(h1, 2, pruned),
                         strategic_representation(h2, 2, pruned)};
  // The uniform mixture over the two pure equilibria pays (3/2, 3/2).
  CHECK(expected_payoff(pruned, honest, 1) == Rational(3, 2));
  CHECK(expected_payoff(pruned, honest, 2) == Rational(3, 2));

  // Aborting earns at most the punishment value.
  for (const auto& name : {"abort-round-1", "abort-round-3"}) {
    StrategyProfile dev{
        strategic_representation(by_name(dhr_p1_registry(d.ell, ideal), name), 2, pruned),
        honest.s2};
    CHECK(expected_payoff(pruned, dev, 1) <= Rational(2, 3));
  }

  // The filter tolerates honest play and ideal-blind inverters, and rejects
  // the toy-decoding inverter when commitments are readable.
  ToyOWP f = ToyOWP::identity(2);
  StrategyFilter filt = dhr_filter_p2(dg, ideal);
  CHECK(filt(h2, 2, Rational(0)).has_value());
  CHECK(filt(by_name(dhr_p2_registry(d.ell, f), "brute-invert"), 2, Rational(0)).has_value());

  ToyCommitment toy(f);
  DhrGame toy_game = build_dhr_game(nf, nes, d, toy);
  StrategyFilter toy_filt = dhr_filter_p2(toy_game, toy);
  CHECK_FALSE(
      toy_filt(by_name(dhr_p2_registry(d.ell, f), "brute-invert"), 2, Rational(0)).has_value());

  // Full instance check on the pruned representation.
  StrategyFilter f1 = accept_all_filter(pruned);
  CtfneResult res = check_ctfne_at(pruned, 2, Rational(0), h1, h2, f1, filt,
                                   dhr_p1_registry(d.ell, ideal), dhr_p2_registry(d.ell, f));
  CHECK(res.verdict.holds);
}
