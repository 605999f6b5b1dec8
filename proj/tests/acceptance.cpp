// Acceptance checks: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <iostream>

#include "tfne/montecarlo.hpp"
#include "tfne/protocols.hpp"
#include "tfne/verify.hpp"

using namespace tfne;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " — " << detail
            << "\n";
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string trial_summary(const SuiteResult& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.total) + " trials";
  if (!r.failures.empty()) s += " (" + r.failures.front() + ")";
  return s;
}

NormalFormGame battle_of_sexes() {
  NormalFormGame nf;
  nf.row_actions = {"a", "b"};
  nf.col_actions = {"a", "b"};
  nf.payoffs = {{{2, 1}, {0, 0}}, {{0, 0}, {1, 2}}};
  return nf;
}

// Unique threat-free continuations match a brute-force subtree enumeration.
void criterion1() {
  auto start = std::chrono::steady_clock::now();
  SuiteResult r = verify_prop1(200, 7);
  double secs = seconds_since(start);
  report(1, r.ok() && secs < 120,
         "unique threat-free continuation vs enumeration oracle, " + trial_summary(r) + ", " +
             std::to_string(secs) + " s");
}

// Every nonempty continuation set yields a certified eps-threat-free member.
void criterion2() {
  SuiteResult r = verify_prop2(200, 11);
  report(2, r.ok(), "constructive existence over constrained games, " + trial_summary(r));
}

// The guessing-constrained preimage game: the zero-message profile is an
// eps-TFNE; the uniform variant is an eps-NE broken by a round-1 threat.
void criterion3() {
  auto start = std::chrono::steady_clock::now();
  ToyOWP f = ToyOWP::identity(2);
  ExtensiveGame g = build_modified_owp_game(2, f);
  int zero = g.find({"00"});

  ConstraintSet t;
  // P1: the four point senders plus uniform-over-nonzero.
  for (int a = 0; a < 4; ++a) {
    ReducedStrategy s;
    s.player = 1;
    s.set(g.root(), ActionDist::point(4, a));
    t.t1.push_back(std::move(s));
  }
  ReducedStrategy nonzero;
  nonzero.player = 1;
  nonzero.set(g.root(), ActionDist{{Rational(0), Rational(1, 3), Rational(1, 3), Rational(1, 3)}});
  t.t1.push_back(nonzero);
  // P2: zero-after-zero (uniform elsewhere) and everywhere-uniform; both
  // pass the guessing bound.
  ReducedStrategy zaz, unif;
  zaz.player = 2;
  unif.player = 2;
  for (const auto& [label, y] : g.node(g.root()).children) {
    zaz.set(y, y == zero ? ActionDist::point(4, 0) : ActionDist::uniform(4));
    unif.set(y, ActionDist::uniform(4));
  }
  t.t2 = {zaz, unif};

  bool ok = true;
  std::string detail;
  for (const Rational& eps : {Rational(0), Rational(1, 4)}) {
    EpsTfneVerdict good = is_eps_tfne(g, t, StrategyProfile{t.t1[0], zaz}, eps);
    if (!good.holds) {
      ok = false;
      detail = "prescribed profile rejected at eps=" + format_rational(eps);
      break;
    }
    EpsTfneVerdict bad = is_eps_tfne(g, t, StrategyProfile{t.t1[4], unif}, eps);
    if (bad.holds || !bad.ne.holds || !bad.threat || bad.threat->round != 1 ||
        bad.threat->player != 1) {
      ok = false;
      detail = "uniform variant lacks the expected round-1 threat at eps=" + format_rational(eps);
      break;
    }
  }
  double secs = seconds_since(start);
  if (ok && secs >= 1) {
    ok = false;
    detail = "overran the 1 s budget";
  }
  if (ok)
    detail = "zero-message profile certified, uniform variant threatened at round 1, " +
             std::to_string(secs) + " s";
  report(3, ok, "guessing-constrained preimage game: " + detail);
}

// Coin flipping over the ideal scheme is a CTFNE instance at k in {2,3};
// the toy-scheme brute inverter is filtered.
void criterion4() {
  bool ok = true;
  std::string detail;
  for (int k : {2, 3}) {
    IdealCommitment scheme(k);
    ExtensiveGame g = build_coinflip_game(scheme);
    ToyOWP f = ToyOWP::identity(k);
    auto family1 = coinflip_p1_registry(scheme);
    auto family2 = coinflip_p2_registry(f);
    StrategyFilter filter = coinflip_filter(scheme);
    CtfneResult res;
    try {
      res = check_ctfne_at(g, k, Rational(0), coinflip_honest_p1(scheme), coinflip_honest_p2(),
                           filter, filter, family1, family2);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("k=") + std::to_string(k) + ": " + e.what();
      break;
    }
    if (!res.verdict.holds) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": honest profile rejected";
      break;
    }
    if (expected_payoff(g, res.profile, 1) != Rational(1, 2) ||
        expected_payoff(g, res.profile, 2) != Rational(1, 2)) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": honest payoffs differ from (1/2, 1/2)";
      break;
    }
    for (int round = 1; round <= 3; ++round) {
      if (is_eps_threat_at_round(g, res.t, res.profile, round, Rational(0)).threatened) {
        ok = false;
        detail = "k=" + std::to_string(k) + ": eps-threat at round " + std::to_string(round);
        break;
      }
    }
    if (!ok) break;
    ToyCommitment toy(f);
    if (coinflip_filter(toy)(coinflip_brute_inverter(f), k, Rational(1, 4)).has_value()) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": toy brute inverter escaped the filter";
      break;
    }
  }
  if (ok)
    detail = "honest CTFNE at k in {2,3}, payoffs (1/2, 1/2), no round threat, "
             "toy inverter filtered at eps=1/4";
  report(4, ok, "coin flipping: " + detail);
}

// Mediator removal for the uniform battle-of-the-sexes correlated
// equilibrium: undominated target, honest CTFNE on the pruned game, aborts
// never profitable, empirical index distribution near uniform.
void criterion5() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  NormalFormGame nf = battle_of_sexes();
  BimatrixNEList nes = bimatrix_ne_enumerate(nf);
  int aa = -1, bb = -1;
  for (size_t i = 0; i < nes.list.size(); ++i) {
    if (nes.list[i].u1 == 2) aa = static_cast<int>(i);
    if (nes.list[i].u1 == 1) bb = static_cast<int>(i);
  }
  std::vector<Rational> weights(nes.list.size(), Rational(0));
  weights[static_cast<size_t>(aa)] = Rational(1, 2);
  weights[static_cast<size_t>(bb)] = Rational(1, 2);
  CEDecomposition d = decompose_ce(nf, nes, weights);

  if (ce_hull_dominated(nes, d.payoffs).dominated) {
    ok = false;
    detail = "target payoffs are hull-dominated";
  }

  IdealCommitment scheme(2);
  DhrGame dg = build_dhr_game(nf, nes, d, scheme);
  ExtensiveGame pruned = prune_gsml(dg.game);
  MachineSpec h1 = dhr_honest_p1(d.ell, scheme);
  MachineSpec h2 = dhr_honest_p2(d.ell);
  auto family1 = dhr_p1_registry(d.ell, scheme);
  auto family2 = dhr_p2_registry(d.ell, ToyOWP::identity(2));
  StrategyFilter f1 = accept_all_filter(pruned);
  StrategyFilter f2 = dhr_filter_p2(dg, scheme);

  CtfneResult res;
  if (ok) {
    try {
      res = check_ctfne_at(pruned, 2, Rational(0), h1, h2, f1, f2, family1, family2);
      if (!res.verdict.holds) {
        ok = false;
        detail = "honest profile rejected on the pruned game";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
  }

  if (ok) {
    Rational honest1 = expected_payoff(pruned, res.profile, 1);
    Rational honest2 = expected_payoff(pruned, res.profile, 2);
    for (const auto& m : family1) {
      if (m.name.rfind("abort", 0) != 0) continue;
      StrategyProfile dev{strategic_representation(m, 2, pruned), res.profile.s2};
      if (expected_payoff(pruned, dev, 1) > honest1) {
        ok = false;
        detail = "aborting deviant " + m.name + " profits";
      }
    }
    for (const auto& m : family2) {
      if (m.name.rfind("abort", 0) != 0) continue;
      StrategyProfile dev{res.profile.s1, strategic_representation(m, 2, pruned)};
      if (expected_payoff(pruned, dev, 2) > honest2) {
        ok = false;
        detail = "aborting deviant " + m.name + " profits";
      }
    }
  }

  if (ok) {
    // Under honest play the realized index r xor r' should be uniform; the
    // two indices are distinguished by the pruned leaf payoffs (2,1)/(1,2).
    const std::uint64_t runs = 100000;
    auto counts = empirical_outcome_distribution(pruned, h1, h2, 2, runs, 1);
    std::uint64_t idx0 = 0, idx1 = 0, other = 0;
    for (const auto& [leaf, c] : counts) {
      if (pruned.node(leaf).u1 == 2)
        idx0 += c;
      else if (pruned.node(leaf).u1 == 1)
        idx1 += c;
      else
        other += c;
    }
    double tv = 0.5 * (std::abs(static_cast<double>(idx0) / runs - 0.5) +
                       std::abs(static_cast<double>(idx1) / runs - 0.5)) +
                0.5 * static_cast<double>(other) / runs;
    if (other != 0 || tv >= 0.02) {
      ok = false;
      detail = "empirical index distribution off-uniform (TV " + std::to_string(tv) + ")";
    }
  }

  double secs = seconds_since(start);
  if (ok && secs >= 60) {
    ok = false;
    detail = "overran the 60 s budget";
  }
  if (ok)
    detail = "undominated target, honest CTFNE, aborts unprofitable, empirical indices uniform, " +
             std::to_string(secs) + " s";
  report(5, ok, "mediator removal: " + detail);
}

// eps-NE + weak Pareto optimality + eps-safety imply eps-TFNE; in zero-sum
// games the side conditions are free.
void criterion6() {
  SuiteResult general = verify_general_theorem(200, 17);
  SuiteResult zs = verify_zero_sum(100, 19);
  report(6, general.ok() && zs.ok(),
         "sufficient conditions: " + trial_summary(general) + "; zero-sum: " + trial_summary(zs));
}

void criterion7() {
  SuiteResult r = verify_tfne_spe(100, 23);
  report(7, r.ok(), "pure TFNE outcomes match backward induction, " + trial_summary(r));
}

void criterion8() {
  SuiteResult r = verify_mixed_behavioral(100, 29);
  report(8, r.ok(), "mixed-to-behavioral outcome equivalence, " + trial_summary(r));
}

// Commitment invariants: exhaustive completeness and binding for both
// schemes at k in {2,3}; the ideal scheme reveals nothing to any registered
// guesser.
void criterion9() {
  bool ok = true;
  std::string detail;
  for (int k : {2, 3}) {
    IdealCommitment ideal(k);
    ToyCommitment toy(ToyOWP::shuffled(k, 41));
    for (const CommitmentScheme* s : {static_cast<const CommitmentScheme*>(&ideal),
                                      static_cast<const CommitmentScheme*>(&toy)}) {
      if (!check_completeness(*s).empty() || !check_binding(*s).empty()) {
        ok = false;
        detail = s->name() + " scheme fails an invariant at k=" + std::to_string(k);
      }
    }
    for (const auto& guesser : guesser_registry(ToyOWP::identity(k))) {
      if (hiding_advantage(ideal, guesser) != 0) {
        ok = false;
        detail = "guesser " + guesser.name + " has nonzero ideal advantage at k=" +
                 std::to_string(k);
      }
    }
  }
  if (ok) detail = "completeness, binding, and zero ideal hiding advantage at k in {2,3}";
  report(9, ok, "commitment invariants: " + detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
