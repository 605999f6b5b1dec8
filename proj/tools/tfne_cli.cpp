#include <CLI11.hpp>
#include <iostream>

#include "tfne/io.hpp"
#include "tfne/montecarlo.hpp"
#include "tfne/protocols.hpp"
#include "tfne/verify.hpp"

namespace {

using namespace tfne;

constexpr int kPass = 0, kFail = 1, kInputError = 2;

std::string describe_strategy(const ExtensiveGame& g, const ReducedStrategy& s) {
  std::ostringstream out;
  for (const auto& [id, d] : s.choice) {
    out << "    at " << history_key(g.path(id)) << " :";
    const auto& children = g.node(id).children;
    for (size_t a = 0; a < d.w.size(); ++a)
      if (d.w[a] != 0) out << " " << children[a].first << "=" << format_rational(d.w[a]);
    out << "\n";
  }
  return out.str();
}

void print_ne_witness(const ExtensiveGame& g, const NEVerdict::Witness& w,
                      const std::string& kind) {
  std::cout << "witness: player " << w.player << " " << kind << " with gain "
            << format_rational(w.gain);
  if (w.site >= 0) std::cout << " at " << history_key(g.path(w.site));
  std::cout << "\n" << describe_strategy(g, w.deviation);
}

void print_threat_witness(const ExtensiveGame& g, const ThreatReport& r) {
  std::cout << "witness: player " << r.player << " threat";
  if (r.site >= 0) std::cout << " at history " << history_key(g.path(r.site));
  if (r.round > 0) std::cout << " at round " << r.round;
  std::cout << ", gap " << format_rational(r.gap) << "\n";
  if (!r.deviation.w.empty()) {
    std::cout << "  deviation:";
    const auto& children = g.node(r.site).children;
    for (size_t a = 0; a < r.deviation.w.size(); ++a)
      if (r.deviation.w[a] != 0)
        std::cout << " " << children[a].first << "=" << format_rational(r.deviation.w[a]);
    std::cout << "\n";
  }
  for (const auto& [id, d] : r.round_deviation.at) {
    std::cout << "  round deviation at " << history_key(g.path(id)) << " :";
    const auto& children = g.node(id).children;
    for (size_t a = 0; a < d.w.size(); ++a)
      if (d.w[a] != 0) std::cout << " " << children[a].first << "=" << format_rational(d.w[a]);
    std::cout << "\n";
  }
}

StrategyProfile load_profile(const ExtensiveGame& g, const std::vector<std::string>& paths) {
  StrategyProfile p;
  bool have1 = false, have2 = false;
  for (const auto& path : paths) {
    ReducedStrategy s = parse_strategy(read_file(path), g);
    auto issues = validate_strategy(g, s);
    if (!issues.empty()) throw GameError(path + ": " + issues.front());
    (s.player == 1 ? have1 : have2) = true;
    p.of(s.player) = std::move(s);
  }
  if (!have1 || !have2)
    throw GameError("a profile needs one strategy file per player (player 1 and player 2)");
  return p;
}

int run_analyze(const std::string& game_path, const std::vector<std::string>& profile_paths,
                const std::string& constraints_path, const std::string& check,
                const Rational& eps, const std::string& mode_name,
                const std::string& bimatrix_path, const std::string& ce_path) {
  if (!bimatrix_path.empty()) {
    NormalFormGame nf = parse_bimatrix(read_file(bimatrix_path));
    BimatrixNEList nes = bimatrix_ne_enumerate(nf);
    std::cout << nes.list.size() << " equilibria" << (nes.degenerate ? " (degenerate game)" : "")
              << "\n";
    for (size_t i = 0; i < nes.list.size(); ++i) {
      const auto& ne = nes.list[i];
      std::cout << "[" << i << "] row=(";
      for (size_t r = 0; r < ne.profile.row.size(); ++r)
        std::cout << (r ? "," : "") << format_rational(ne.profile.row[r]);
      std::cout << ") col=(";
      for (size_t c = 0; c < ne.profile.col.size(); ++c)
        std::cout << (c ? "," : "") << format_rational(ne.profile.col[c]);
      std::cout << ") u=(" << format_rational(ne.u1) << "," << format_rational(ne.u2) << ")\n";
    }
    if (!ce_path.empty()) {
      auto ce = parse_ce_file(read_file(ce_path));
      std::vector<Rational> weights(nes.list.size(), Rational(0));
      for (const auto& [idx, w] : ce) {
        if (idx >= static_cast<int>(nes.list.size()))
          throw GameError("equilibrium index " + std::to_string(idx) + " out of range");
        weights[static_cast<size_t>(idx)] += w;
      }
      CEDecomposition d = decompose_ce(nf, nes, weights);
      std::cout << "correlated payoffs (" << format_rational(d.payoffs.first) << ","
                << format_rational(d.payoffs.second) << "), uniform sequence length "
                << d.sequence.size() << ":";
      for (int idx : d.sequence) std::cout << " " << idx;
      std::cout << "\n";
      HullDominance hd = ce_hull_dominated(nes, d.payoffs);
      if (hd.dominated) {
        std::cout << "FAIL: dominated by the equilibrium-hull point with weights";
        for (const auto& w : hd.weights) std::cout << " " << format_rational(w);
        std::cout << "\n";
        return kFail;
      }
      std::cout << "PASS: not dominated by any convex combination of the equilibria\n";
    }
    return kPass;
  }

  if (game_path.empty()) throw GameError("--game or --bimatrix is required");
  ExtensiveGame g = parse_extensive_game(read_file(game_path));
  auto issues = validate_game(g);
  if (!issues.empty()) throw GameError(game_path + ": " + issues.front());
  StrategyProfile p = load_profile(g, profile_paths);

  std::optional<ConstraintSet> t;
  if (!constraints_path.empty()) {
    ConstraintFile cf = parse_constraint_file(read_file(constraints_path));
    std::string base = std::filesystem::path(constraints_path).parent_path().string();
    t = load_constraint_set(cf, g, base);
  }
  OutcomeMode mode =
      mode_name == "conditional" ? OutcomeMode::kConditional : OutcomeMode::kUnconditional;

  if (check == "ne") {
    NEVerdict v = t ? is_epsilon_ne(g, *t, p, eps) : is_epsilon_ne(g, p, eps);
    if (v.holds) {
      std::cout << "PASS: " << format_rational(eps) << "-Nash equilibrium\n";
      return kPass;
    }
    std::cout << "FAIL: not a " << format_rational(eps) << "-Nash equilibrium\n";
    print_ne_witness(g, *v.witness, "deviation");
    return kFail;
  }
  if (check == "spe") {
    NEVerdict v = is_spe(g, p, eps);
    if (v.holds) {
      std::cout << "PASS: subgame perfect (slack " << format_rational(eps) << ")\n";
      return kPass;
    }
    std::cout << "FAIL: not subgame perfect\n";
    print_ne_witness(g, *v.witness, "subgame deviation");
    return kFail;
  }
  if (check == "tfne") {
    TfneVerdict v = is_tfne(g, p, mode);
    if (v.holds) {
      std::cout << "PASS: threat-free Nash equilibrium\n";
      return kPass;
    }
    std::cout << "FAIL: not a threat-free Nash equilibrium\n";
    if (!v.ne.holds)
      print_ne_witness(g, *v.ne.witness, "deviation");
    else
      print_threat_witness(g, *v.threat);
    return kFail;
  }
  if (check == "eps-tfne") {
    if (!t) throw GameError("--check eps-tfne requires --constraints");
    EpsTfneVerdict v = is_eps_tfne(g, *t, p, eps);
    if (v.holds) {
      std::cout << "PASS: " << format_rational(eps) << "-threat-free Nash equilibrium\n";
      return kPass;
    }
    std::cout << "FAIL: not a " << format_rational(eps) << "-threat-free Nash equilibrium\n";
    if (!v.ne.holds)
      print_ne_witness(g, *v.ne.witness, "deviation");
    else
      print_threat_witness(g, *v.threat);
    return kFail;
  }
  if (check == "pareto") {
    if (!t) throw GameError("--check pareto requires --constraints");
    ParetoVerdict v = is_weakly_pareto_optimal(g, *t, p);
    if (v.holds) {
      std::cout << "PASS: weakly Pareto optimal over the constraint sets\n";
      return kPass;
    }
    auto [i, j] = *v.witness;
    StrategyProfile q{t->t1[static_cast<size_t>(i)], t->t2[static_cast<size_t>(j)]};
    std::cout << "FAIL: profile (" << i << "," << j << ") pays ("
              << format_rational(expected_payoff(g, q, 1)) << ","
              << format_rational(expected_payoff(g, q, 2)) << "), strictly more for both\n";
    return kFail;
  }
  if (check == "safe") {
    if (!t) throw GameError("--check safe requires --constraints");
    NEVerdict v = is_epsilon_safe(g, *t, p, eps);
    if (v.holds) {
      std::cout << "PASS: " << format_rational(eps) << "-safe\n";
      return kPass;
    }
    std::cout << "FAIL: not " << format_rational(eps) << "-safe\n";
    print_ne_witness(g, *v.witness, "deviation hurting the opponent by");
    return kFail;
  }
  throw GameError("unknown --check value: " + check);
}

int run_threats(const std::string& game_path, const std::vector<std::string>& profile_paths,
                const std::string& constraints_path, int round, const Rational& eps,
                const std::string& mode_name) {
  ExtensiveGame g = parse_extensive_game(read_file(game_path));
  StrategyProfile p = load_profile(g, profile_paths);
  if (!constraints_path.empty()) {
    ConstraintFile cf = parse_constraint_file(read_file(constraints_path));
    std::string base = std::filesystem::path(constraints_path).parent_path().string();
    ConstraintSet t = load_constraint_set(cf, g, base);
    int first = round > 0 ? round : 1;
    int last = round > 0 ? round : g.last_decision_round();
    bool any = false;
    for (int r = first; r <= last; ++r) {
      ThreatReport rep = is_eps_threat_at_round(g, t, p, r, eps);
      if (!rep.threatened) continue;
      any = true;
      print_threat_witness(g, rep);
    }
    if (!any) {
      std::cout << "PASS: no " << format_rational(eps) << "-threat at "
                << (round > 0 ? "round " + std::to_string(round) : "any round") << "\n";
      return kPass;
    }
    return kFail;
  }
  OutcomeMode mode =
      mode_name == "conditional" ? OutcomeMode::kConditional : OutcomeMode::kUnconditional;
  bool any = false;
  for (int h : g.nonterminals()) {
    if (!p.of(g.node(h).owner).has(h)) continue;
    ThreatReport rep = is_threat_at(g, p, h, mode);
    if (!rep.threatened) continue;
    any = true;
    print_threat_witness(g, rep);
  }
  if (!any) {
    std::cout << "PASS: no threatened history\n";
    return kPass;
  }
  return kFail;
}

int run_simulate(const std::string& scheme_name, int k, std::uint64_t runs, std::uint64_t seed) {
  std::unique_ptr<CommitmentScheme> scheme;
  if (scheme_name == "ideal")
    scheme = std::make_unique<IdealCommitment>(k);
  else
    scheme = std::make_unique<ToyCommitment>(ToyOWP::shuffled(k, seed ^ 0x746f79ULL));
  ExtensiveGame g = build_coinflip_game(*scheme);
  MachineSpec m1 = coinflip_honest_p1(*scheme);
  MachineSpec m2 = coinflip_honest_p2();
  auto counts = empirical_outcome_distribution(g, m1, m2, k, runs, seed);
  std::uint64_t p1_wins = 0;
  for (const auto& [leaf, c] : counts)
    if (g.node(leaf).u1 == 1) p1_wins += c;
  std::cout << "coinflip scheme=" << scheme->name() << " k=" << k << " runs=" << runs
            << " seed=" << seed << "\n";
  for (const auto& [leaf, c] : counts)
    std::cout << "  " << history_key(g.path(leaf)) << ": " << c << "\n";
  double freq = static_cast<double>(p1_wins) / static_cast<double>(runs);
  std::cout << "P1-win frequency: " << freq << " (exact expectation 1/2)\n";
  return kPass;
}

int run_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
  if (want("prop1")) results.push_back(verify_prop1(trials, seed));
  if (want("prop2")) results.push_back(verify_prop2(trials, seed));
  if (want("general")) results.push_back(verify_general_theorem(trials, seed));
  if (want("zero-sum")) results.push_back(verify_zero_sum(trials, seed));
  if (want("tfne-spe")) results.push_back(verify_tfne_spe(trials, seed));
  if (want("mix-beh")) results.push_back(verify_mixed_behavioral(trials, seed));
  if (results.empty()) throw GameError("unknown suite: " + suite);
  bool ok = true;
  for (const auto& r : results) {
    if (suite == "prop1")
      std::cout << r.passed << "/" << r.total << " unique threat-free continuations matched\n";
    else
      std::cout << r.summary() << "\n";
    ok = ok && r.ok();
  }
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact threat-free equilibrium analysis for finite two-player games"};
  app.require_subcommand(1);

  std::string game_path, constraints_path, check = "ne", mode = "unconditional";
  std::string bimatrix_path, ce_path, scheme = "ideal", eps_text = "0", suite, protocol;
  std::vector<std::string> profile_paths;
  int round = 0, k = 2;
  std::uint64_t runs = 100000, seed = 1, trials = 200;

  auto* analyze = app.add_subcommand("analyze", "equilibrium and dominance checks");
  analyze->add_option("--game", game_path, "extensive game file");
  analyze->add_option("--profile", profile_paths, "strategy file (one per player)");
  analyze->add_option("--constraints", constraints_path, "constraint file");
  analyze->add_option("--check", check, "ne|spe|tfne|eps-tfne|pareto|safe");
  analyze->add_option("--epsilon", eps_text, "slack, exact rational");
  analyze->add_option("--mode", mode, "unconditional|conditional");
  analyze->add_option("--bimatrix", bimatrix_path, "bimatrix game file");
  analyze->add_option("--ce", ce_path, "correlated-equilibrium weight file");

  auto* threats = app.add_subcommand("threats", "threat scans");
  threats->add_option("--game", game_path, "extensive game file")->required();
  threats->add_option("--profile", profile_paths, "strategy file (one per player)")->required();
  threats->add_option("--constraints", constraints_path, "constraint file");
  threats->add_option("--round", round, "restrict to one round");
  threats->add_option("--epsilon", eps_text, "slack, exact rational");
  threats->add_option("--mode", mode, "unconditional|conditional");

  auto* simulate = app.add_subcommand("simulate", "protocol execution");
  simulate->add_option("protocol", protocol, "coinflip")->required();
  simulate->add_option("--k", k, "security parameter");
  simulate->add_option("--scheme", scheme, "ideal|toy");
  simulate->add_option("--runs", runs, "number of executions");
  simulate->add_option("--seed", seed, "root seed");

  auto* verify = app.add_subcommand("verify", "randomized property suites");
  verify->add_option("suite", suite, "prop1|prop2|general|zero-sum|tfne-spe|mix-beh|all")
      ->required();
  verify->add_option("--trials", trials, "trials per suite");
  verify->add_option("--seed", seed, "root seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInputError;
  }

  try {
    tfne::Rational eps = tfne::parse_rational(eps_text);
    if (analyze->parsed())
      return run_analyze(game_path, profile_paths, constraints_path, check, eps, mode,
                         bimatrix_path, ce_path);
    if (threats->parsed())
      return run_threats(game_path, profile_paths, constraints_path, round, eps, mode);
    if (simulate->parsed()) {
      if (protocol != "coinflip") throw tfne::GameError("unknown protocol: " + protocol);
      return run_simulate(scheme, k, runs, seed);
    }
    if (verify->parsed()) return run_verify(suite, trials, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
