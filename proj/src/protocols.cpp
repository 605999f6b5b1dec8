#include "tfne/protocols.hpp"

#include <algorithm>

namespace tfne {

namespace {

std::string zeros(int n) { return std::string(n, '0'); }

// Machine outputs outside the action set read as abort where available.
std::string normalize_action(const ExtensiveGame& g, int node, const std::string& out) {
  if (g.child(node, out) != -1) return out;
  if (g.child(node, kAbort) != -1) return kAbort;
  throw GameError("machine output '" + out + "' is not an action at " +
                  history_key(g.path(node)));
}

std::vector<std::string> all_bit_strings(int n) {
  std::vector<std::string> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(int_to_bits(v, n));
  return out;
}

}  // namespace

ExtensiveGame build_owp_game(int n, const ToyOWP& f) {
  if (n < 2 || n > 8) throw TooLarge("preimage game supports 2 <= n <= 8");
  ExtensiveGame g;
  g.set_alternating(true);
  g.set_owner(g.root(), 1);
  for (const auto& y : all_bit_strings(n)) {
    int yn = g.add_child(g.root(), y);
    g.set_owner(yn, 2);
    std::string x = owp_brute_invert(f, y);
    for (const auto& z : all_bit_strings(n)) {
      int zn = g.add_child(yn, z);
      if (z == x)
        g.make_terminal(zn, -1, 1);
      else
        g.make_terminal(zn, 1, -1);
    }
  }
  return g;
}

ExtensiveGame build_modified_owp_game(int n, const ToyOWP& f) {
  if (n < 2 || n > 8) throw TooLarge("preimage game supports 2 <= n <= 8");
  ExtensiveGame g;
  g.set_alternating(true);
  g.set_owner(g.root(), 1);
  const std::string zero = zeros(n);
  for (const auto& y : all_bit_strings(n)) {
    int yn = g.add_child(g.root(), y);
    g.set_owner(yn, 2);
    std::string x = owp_brute_invert(f, y);
    for (const auto& z : all_bit_strings(n)) {
      int zn = g.add_child(yn, z);
      if (y == zero && z == zero)
        g.make_terminal(zn, 2, 2);
      else if (y == zero || z == zero)
        g.make_terminal(zn, -2, -2);
      else if (z == x)
        g.make_terminal(zn, -1, 1);
      else
        g.make_terminal(zn, 1, -1);
    }
  }
  return g;
}

ReducedStrategy strategic_representation(const MachineSpec& m, int k, const ExtensiveGame& g) {
  int cb = m.coin_bits(k);
  if (cb > 20) throw EnumerationTooLarge("machine coin budget > 20 bits");
  const std::uint64_t coins = std::uint64_t{1} << cb;
  ReducedStrategy out;
  out.player = m.player;
  for (int id : g.nonterminals()) {
    if (g.node(id).owner != m.player) continue;
    History path = g.path(id);
    // Own decision nodes along the path, paired with the action taken there.
    std::vector<std::pair<int, std::string>> own_steps;
    {
      int cur = g.root();
      for (const auto& label : path) {
        if (g.node(cur).owner == m.player) own_steps.emplace_back(cur, label);
        cur = g.child(cur, label);
      }
    }
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < coins; ++c) {
      bool consistent = true;
      for (const auto& [anc, taken] : own_steps) {
        if (normalize_action(g, anc, m.next(k, c, g.path(anc))) != taken) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      ++counts[normalize_action(g, id, m.next(k, c, path))];
      ++total;
    }
    if (total == 0) continue;  // unreachable under the machine's own play
    const auto& children = g.node(id).children;
    ActionDist d;
    d.w.resize(children.size(), Rational(0));
    for (size_t a = 0; a < children.size(); ++a) {
      auto it = counts.find(children[a].first);
      if (it != counts.end()) d.w[a] = Rational(it->second, total);
    }
    out.set(id, std::move(d));
  }
  return out;
}

std::vector<ReducedStrategy> tractable_set(const StrategyFilter& filter,
                                           const std::vector<MachineSpec>& family, int k,
                                           const Rational& eps, const ExtensiveGame& g) {
  (void)g;
  std::vector<ReducedStrategy> out;
  for (const auto& m : family) {
    auto rep = filter(m, k, eps);
    if (!rep) continue;
    bool dup = std::any_of(out.begin(), out.end(), [&](const ReducedStrategy& s) {
      return s.player == rep->player && s.choice == rep->choice;
    });
    if (!dup) out.push_back(std::move(*rep));
  }
  return out;
}

CoveringReport covering_check(const StrategyFilter& filter, const std::vector<MachineSpec>& family,
                              const Rational& eps, const std::vector<int>& k_range) {
  CoveringReport report;
  for (const auto& m : family) {
    CoveringReport::Entry e;
    e.machine = m.name;
    for (size_t i = 0; i < k_range.size(); ++i) {
      bool stable = true;
      for (size_t j = i; j < k_range.size() && stable; ++j)
        if (!filter(m, k_range[j], eps)) stable = false;
      if (stable) {
        e.first_stable_k = k_range[i];
        break;
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

CtfneResult check_ctfne_at(const ExtensiveGame& g, int k, const Rational& eps,
                           const MachineSpec& m1, const MachineSpec& m2, const StrategyFilter& f1,
                           const StrategyFilter& f2, const std::vector<MachineSpec>& family1,
                           const std::vector<MachineSpec>& family2) {
  auto r1 = f1(m1, k, eps);
  if (!r1) throw MachineFiltered(1);
  auto r2 = f2(m2, k, eps);
  if (!r2) throw MachineFiltered(2);
  CtfneResult result;
  result.t.t1 = tractable_set(f1, family1, k, eps, g);
  result.t.t2 = tractable_set(f2, family2, k, eps, g);
  result.profile = {std::move(*r1), std::move(*r2)};
  result.verdict = is_eps_tfne(g, result.t, result.profile, eps);
  return result;
}

StrategyFilter owp_guess_filter(const ToyOWP& f, const ExtensiveGame& g) {
  return [f, &g](const MachineSpec& m, int k, const Rational& eps)
             -> std::optional<ReducedStrategy> {
    if (m.player == 2) {
      int cb = m.coin_bits(k);
      if (cb > 20) throw EnumerationTooLarge("machine coin budget > 20 bits");
      std::uint64_t hits = 0, total = 0;
      for (std::uint64_t xv = 0; xv < f.table.size(); ++xv) {
        std::string y = owp_eval(f, int_to_bits(xv, f.n));
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << cb); ++c) {
          if (m.next(k, c, {y}) == int_to_bits(xv, f.n)) ++hits;
          ++total;
        }
      }
      if (Rational(hits, total) > Rational(1, 2) + eps) return std::nullopt;
    }
    return strategic_representation(m, k, g);
  };
}

std::vector<MachineSpec> owp_p1_registry(int n) {
  std::vector<MachineSpec> out;
  for (const auto& y : all_bit_strings(n)) {
    MachineSpec m;
    m.name = "send-" + y;
    m.player = 1;
    m.coin_bits = [](int) { return 0; };
    m.next = [y](int, std::uint64_t, const History&) { return y; };
    out.push_back(std::move(m));
  }
  MachineSpec u;
  u.name = "send-uniform";
  u.player = 1;
  u.coin_bits = [n](int) { return n; };
  u.next = [n](int, std::uint64_t c, const History&) {
    return int_to_bits(c & ((std::uint64_t{1} << n) - 1), n);
  };
  out.push_back(std::move(u));
  return out;
}

std::vector<MachineSpec> owp_p2_registry(int n, const ToyOWP& f) {
  std::vector<MachineSpec> out;
  MachineSpec a;
  a.name = "answer-zero-after-zero";
  a.player = 2;
  a.coin_bits = [n](int) { return n; };
  a.next = [n](int, std::uint64_t c, const History& h) {
    if (!h.empty() && h[0] == zeros(n)) return zeros(n);
    return int_to_bits(c & ((std::uint64_t{1} << n) - 1), n);
  };
  out.push_back(std::move(a));
  MachineSpec b;
  b.name = "answer-uniform";
  b.player = 2;
  b.coin_bits = [n](int) { return n; };
  b.next = [n](int, std::uint64_t c, const History&) {
    return int_to_bits(c & ((std::uint64_t{1} << n) - 1), n);
  };
  out.push_back(std::move(b));
  MachineSpec inv;
  inv.name = "brute-invert";
  inv.player = 2;
  inv.coin_bits = [](int) { return 0; };
  inv.next = [f](int, std::uint64_t, const History& h) {
    return h.empty() ? std::string("0") : owp_brute_invert(f, h[0]);
  };
  out.push_back(std::move(inv));
  return out;
}

// --- coin flipping ------------------------------------------------------------

ExtensiveGame build_coinflip_game(const CommitmentScheme& s) {
  if (s.coin_bits() > 6) throw TooLarge("coin-flip game supports coin budgets up to 6 bits");
  // All decommitment strings the scheme can produce.
  std::vector<std::string> decoms;
  for (int b : {0, 1})
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.coin_bits()); ++c) {
      std::string d = s.commit(b, int_to_bits(c, s.coin_bits())).second;
      if (std::find(decoms.begin(), decoms.end(), d) == decoms.end()) decoms.push_back(d);
    }

  ExtensiveGame g;
  g.set_alternating(true);
  g.set_owner(g.root(), 1);
  for (const auto& com : s.commitment_strings()) {
    int cn = g.add_child(g.root(), com);
    g.set_owner(cn, 2);
    for (const std::string r2 : {"0", "1"}) {
      int rn = g.add_child(cn, r2);
      g.set_owner(rn, 1);
      for (const auto& decom : decoms) {
        int dn = g.add_child(rn, decom);
        int revealed = s.verify(com, decom);
        // Payoff-relevant only when the decommitment legally reveals 1 - r2.
        if (revealed != -1 && revealed == 1 - (r2[0] - '0'))
          g.make_terminal(dn, 1, 0);
        else
          g.make_terminal(dn, 0, 1);
      }
      g.make_terminal(g.add_child(rn, kAbort), 0, 1);
    }
    g.make_terminal(g.add_child(cn, kAbort), 1, 0);
  }
  g.make_terminal(g.add_child(g.root(), kAbort), 0, 1);
  return g;
}

namespace {

// Splits the honest P1 coin vector: low bits are scheme coins, the next bit
// is the committed coin r1.
struct HonestP1Coins {
  int r1;
  std::string scheme_coins;
};
HonestP1Coins split_p1_coins(const CommitmentScheme& s, std::uint64_t c) {
  int cb = s.coin_bits();
  return {static_cast<int>((c >> cb) & 1), int_to_bits(c & ((std::uint64_t{1} << cb) - 1), cb)};
}

}  // namespace

MachineSpec coinflip_honest_p1(const CommitmentScheme& s) {
  const CommitmentScheme* sp = &s;
  MachineSpec m;
  m.name = "honest";
  m.player = 1;
  m.coin_bits = [sp](int) { return 1 + sp->coin_bits(); };
  m.next = [sp](int, std::uint64_t c, const History& h) -> std::string {
    auto [r1, coins] = split_p1_coins(*sp, c);
    auto [com, decom] = sp->commit(r1, coins);
    if (h.empty()) return com;
    if (h.size() == 2 && h[1] == std::to_string(1 - r1)) return decom;  // r1 != r2: reveal
    return kAbort;
  };
  return m;
}

MachineSpec coinflip_honest_p2() {
  MachineSpec m;
  m.name = "honest";
  m.player = 2;
  m.coin_bits = [](int) { return 1; };
  m.next = [](int, std::uint64_t c, const History&) { return std::to_string(c & 1); };
  return m;
}

std::vector<MachineSpec> coinflip_p1_registry(const CommitmentScheme& s) {
  const CommitmentScheme* sp = &s;
  std::vector<MachineSpec> out;
  out.push_back(coinflip_honest_p1(s));

  MachineSpec a1;
  a1.name = "abort-round-1";
  a1.player = 1;
  a1.coin_bits = [](int) { return 0; };
  a1.next = [](int, std::uint64_t, const History&) { return kAbort; };
  out.push_back(std::move(a1));

  MachineSpec a3;
  a3.name = "abort-round-3";
  a3.player = 1;
  a3.coin_bits = [sp](int) { return 1 + sp->coin_bits(); };
  a3.next = [sp](int, std::uint64_t c, const History& h) -> std::string {
    auto [r1, coins] = split_p1_coins(*sp, c);
    if (h.empty()) return sp->commit(r1, coins).first;
    return kAbort;
  };
  out.push_back(std::move(a3));

  MachineSpec flip;
  flip.name = "reveal-when-equal";
  flip.player = 1;
  flip.coin_bits = [sp](int) { return 1 + sp->coin_bits(); };
  flip.next = [sp](int, std::uint64_t c, const History& h) -> std::string {
    auto [r1, coins] = split_p1_coins(*sp, c);
    auto [com, decom] = sp->commit(r1, coins);
    if (h.empty()) return com;
    if (h.size() == 2 && h[1] == std::to_string(r1)) return decom;
    return kAbort;
  };
  out.push_back(std::move(flip));

  MachineSpec cc;
  cc.name = "constant-commit";
  cc.player = 1;
  cc.coin_bits = [](int) { return 0; };
  cc.next = [sp](int, std::uint64_t, const History& h) -> std::string {
    auto [com, decom] = sp->commit(0, std::string(sp->coin_bits(), '0'));
    if (h.empty()) return com;
    if (h.size() == 2 && h[1] == "1") return decom;  // r1 = 0 != r2
    return kAbort;
  };
  out.push_back(std::move(cc));
  return out;
}

MachineSpec coinflip_brute_inverter(const ToyOWP& toy_f) {
  MachineSpec m;
  m.name = "brute-invert";
  m.player = 2;
  m.coin_bits = [](int) { return 0; };
  m.next = [toy_f](int, std::uint64_t, const History& h) -> std::string {
    if (h.empty()) return "0";
    const std::string& com = h[0];
    // Only commitments of the toy shape (n image bits + tag bit) decode;
    // anything else falls back to a constant guess.
    if (static_cast<int>(com.size()) != toy_f.n + 1 ||
        !std::all_of(com.begin(), com.end(), [](char c) { return c == '0' || c == '1'; }))
      return "0";
    std::string x = owp_brute_invert(toy_f, com.substr(0, toy_f.n));
    int parity = 0;
    for (char c : x) parity ^= c - '0';
    return std::to_string((com.back() - '0') ^ parity);
  };
  return m;
}

std::vector<MachineSpec> coinflip_p2_registry(const ToyOWP& toy_f) {
  std::vector<MachineSpec> out;
  out.push_back(coinflip_honest_p2());
  for (const std::string bit : {"0", "1"}) {
    MachineSpec m;
    m.name = "constant-" + bit;
    m.player = 2;
    m.coin_bits = [](int) { return 0; };
    m.next = [bit](int, std::uint64_t, const History&) { return bit; };
    out.push_back(std::move(m));
  }
  MachineSpec a2;
  a2.name = "abort-round-2";
  a2.player = 2;
  a2.coin_bits = [](int) { return 0; };
  a2.next = [](int, std::uint64_t, const History&) { return kAbort; };
  out.push_back(std::move(a2));
  out.push_back(coinflip_brute_inverter(toy_f));
  return out;
}

std::vector<MachineSpec> guesser_registry(const ToyOWP& toy_f) {
  std::vector<MachineSpec> out;
  for (const std::string bit : {"0", "1"}) {
    MachineSpec m;
    m.name = "constant-" + bit;
    m.player = 2;
    m.coin_bits = [](int) { return 0; };
    m.next = [bit](int, std::uint64_t, const History&) { return bit; };
    out.push_back(std::move(m));
  }
  MachineSpec coin;
  coin.name = "own-coin";
  coin.player = 2;
  coin.coin_bits = [](int) { return 1; };
  coin.next = [](int, std::uint64_t c, const History&) { return std::to_string(c & 1); };
  out.push_back(std::move(coin));
  MachineSpec anticoin;
  anticoin.name = "own-coin-flipped";
  anticoin.player = 2;
  anticoin.coin_bits = [](int) { return 1; };
  anticoin.next = [](int, std::uint64_t c, const History&) { return std::to_string(1 - (c & 1)); };
  out.push_back(std::move(anticoin));
  out.push_back(coinflip_brute_inverter(toy_f));

  auto bit_string_com = [](const std::string& com) {
    return std::all_of(com.begin(), com.end(), [](char c) { return c == '0' || c == '1'; });
  };
  MachineSpec tag;
  tag.name = "last-bit";
  tag.player = 2;
  tag.coin_bits = [](int) { return 0; };
  tag.next = [bit_string_com](int, std::uint64_t, const History& h) -> std::string {
    if (h.empty() || h[0].empty() || !bit_string_com(h[0])) return "0";
    return std::string(1, h[0].back());
  };
  out.push_back(std::move(tag));
  MachineSpec first;
  first.name = "first-bit";
  first.player = 2;
  first.coin_bits = [](int) { return 0; };
  first.next = [bit_string_com](int, std::uint64_t, const History& h) -> std::string {
    if (h.empty() || h[0].empty() || !bit_string_com(h[0])) return "0";
    return std::string(1, h[0].front());
  };
  out.push_back(std::move(first));
  MachineSpec par;
  par.name = "parity";
  par.player = 2;
  par.coin_bits = [](int) { return 0; };
  par.next = [bit_string_com](int, std::uint64_t, const History& h) -> std::string {
    if (h.empty() || !bit_string_com(h[0])) return "0";
    int p = 0;
    for (char c : h[0]) p ^= c - '0';
    return std::to_string(p);
  };
  out.push_back(std::move(par));
  return out;
}

StrategyFilter coinflip_filter(const CommitmentScheme& s) {
  const CommitmentScheme* sp = &s;
  return [sp](const MachineSpec& m, int k, const Rational& eps)
             -> std::optional<ReducedStrategy> {
    ExtensiveGame g = build_coinflip_game(*sp);
    if (m.player == 2) {
      int cb = m.coin_bits(k);
      if (sp->coin_bits() + cb + 1 > 24) throw EnumerationTooLarge("combined coin space > 2^24");
      std::uint64_t hits = 0, total = 0;
      for (int b : {0, 1}) {
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << sp->coin_bits()); ++c) {
          std::string com = sp->commit(b, int_to_bits(c, sp->coin_bits())).first;
          for (std::uint64_t mc = 0; mc < (std::uint64_t{1} << cb); ++mc) {
            if (m.next(k, mc, {com}) == std::to_string(b)) ++hits;
            ++total;
          }
        }
      }
      if (Rational(hits, total) > Rational(1, 2) + eps) return std::nullopt;
    }
    return strategic_representation(m, k, g);
  };
}

// --- mediator removal ---------------------------------------------------------

CEDecomposition decompose_ce(const NormalFormGame& nf, const BimatrixNEList& nes,
                             const std::vector<Rational>& weights) {
  (void)nf;
  if (weights.size() != nes.list.size())
    throw NotAConvexCombination("weight count does not match the equilibrium list");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw NotAConvexCombination("negative weight");
    if (!is_dyadic(w)) throw NotDyadic("weight " + format_rational(w) + " is not dyadic");
    sum += w;
  }
  if (sum != 1) throw NotAConvexCombination("weights sum to " + format_rational(sum));
  CEDecomposition d;
  for (const auto& w : weights)
    if (w > 0) d.ell = std::max(d.ell, static_cast<int>(dyadic_exponent(w)));
  for (size_t i = 0; i < weights.size(); ++i) {
    Integer count = numerator(weights[i]) * ((Integer(1) << d.ell) / denominator(weights[i]));
    for (Integer c = 0; c < count; ++c) d.sequence.push_back(static_cast<int>(i));
    d.payoffs.first += weights[i] * nes.list[i].u1;
    d.payoffs.second += weights[i] * nes.list[i].u2;
  }
  return d;
}

namespace {

std::vector<std::string> tuple_labels(const std::vector<std::string>& parts, int ell) {
  std::vector<std::string> out{""};
  for (int i = 0; i < ell; ++i) {
    std::vector<std::string> next;
    for (const auto& prefix : out)
      for (const auto& p : parts) next.push_back(prefix.empty() ? p : prefix + "," + p);
    out = std::move(next);
  }
  return out;
}

std::vector<std::string> split_tuple(const std::string& label) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : label) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int worst_index(const BimatrixNEList& nes, Player p) {
  int arg = 0;
  for (size_t i = 1; i < nes.list.size(); ++i) {
    const Rational& cur = p == 1 ? nes.list[i].u1 : nes.list[i].u2;
    const Rational& best = p == 1 ? nes.list[arg].u1 : nes.list[arg].u2;
    if (cur < best) arg = static_cast<int>(i);
  }
  return arg;
}

}  // namespace

DhrGame build_dhr_game(const NormalFormGame& nf, const BimatrixNEList& nes,
                       const CEDecomposition& d, const CommitmentScheme& s) {
  if (d.ell < 1 || d.ell > 2 || s.coin_bits() > 3)
    throw TooLarge("mediator-removal game supports 1 <= ell <= 2 and coin budgets up to 3 bits");
  DhrGame dg;
  dg.ell = d.ell;
  dg.worst_ne_p1 = worst_index(nes, 1);
  dg.worst_ne_p2 = worst_index(nes, 2);

  ExtensiveGame& g = dg.game.tree;
  g.set_alternating(true);
  g.set_owner(g.root(), 1);
  auto add_leaf = [&](int parent, const std::string& label, int ne_index) {
    int id = g.add_child(parent, label);
    g.make_terminal(id, 0, 0);  // placeholder; the assignment carries the value
    dg.game.leaves.push_back({id, nf, nes.list[ne_index].profile});
  };

  std::vector<std::string> decoms;
  std::vector<std::pair<std::string, std::string>> pairs;  // (com, decom) per bit commitment
  for (int b : {0, 1})
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.coin_bits()); ++c)
      pairs.push_back(s.commit(b, int_to_bits(c, s.coin_bits())));
  for (const auto& [com, decom] : pairs)
    if (std::find(decoms.begin(), decoms.end(), decom) == decoms.end()) decoms.push_back(decom);

  for (const auto& coms : tuple_labels(s.commitment_strings(), d.ell)) {
    int cn = g.add_child(g.root(), coms);
    g.set_owner(cn, 2);
    auto com_parts = split_tuple(coms);
    for (const auto& rprime : all_bit_strings(d.ell)) {
      int rn = g.add_child(cn, rprime);
      g.set_owner(rn, 1);
      for (const auto& ds : tuple_labels(decoms, d.ell)) {
        auto decom_parts = split_tuple(ds);
        // Reveal each committed bit; any failed verification punishes P1.
        std::string r;
        bool ok = true;
        for (int i = 0; i < d.ell && ok; ++i) {
          int bit = s.verify(com_parts[i], decom_parts[i]);
          if (bit == -1)
            ok = false;
          else
            r += static_cast<char>('0' + bit);
        }
        if (!ok) {
          add_leaf(rn, ds, dg.worst_ne_p1);
          continue;
        }
        std::string idx;
        for (int i = 0; i < d.ell; ++i)
          idx += static_cast<char>('0' + ((r[i] - '0') ^ (rprime[i] - '0')));
        add_leaf(rn, ds, d.sequence[static_cast<size_t>(bits_to_int(idx))]);
      }
      add_leaf(rn, kAbort, dg.worst_ne_p1);
    }
    add_leaf(cn, kAbort, dg.worst_ne_p2);
  }
  add_leaf(g.root(), kAbort, dg.worst_ne_p1);
  return dg;
}

MachineSpec dhr_honest_p1(int ell, const CommitmentScheme& s) {
  const CommitmentScheme* sp = &s;
  MachineSpec m;
  m.name = "honest";
  m.player = 1;
  m.coin_bits = [ell, sp](int) { return ell * (1 + sp->coin_bits()); };
  m.next = [ell, sp](int, std::uint64_t c, const History& h) -> std::string {
    // Per committed bit: one coin for the bit, coin_bits() for the scheme.
    std::string coms, decoms;
    for (int i = 0; i < ell; ++i) {
      int cb = sp->coin_bits();
      std::uint64_t chunk = c >> (static_cast<std::uint64_t>(i) * (1 + cb));
      int bit = static_cast<int>(chunk & 1);
      std::string coins = int_to_bits((chunk >> 1) & ((std::uint64_t{1} << cb) - 1), cb);
      auto [com, decom] = sp->commit(bit, coins);
      coms += (i ? "," : "") + com;
      decoms += (i ? "," : "") + decom;
    }
    if (h.empty()) return coms;
    if (h.size() == 2) return decoms;
    return kAbort;
  };
  return m;
}

MachineSpec dhr_honest_p2(int ell) {
  MachineSpec m;
  m.name = "honest";
  m.player = 2;
  m.coin_bits = [ell](int) { return ell; };
  m.next = [ell](int, std::uint64_t c, const History&) {
    return int_to_bits(c & ((std::uint64_t{1} << ell) - 1), ell);
  };
  return m;
}

std::vector<MachineSpec> dhr_p1_registry(int ell, const CommitmentScheme& s) {
  const CommitmentScheme* sp = &s;
  std::vector<MachineSpec> out;
  out.push_back(dhr_honest_p1(ell, s));

  MachineSpec a1;
  a1.name = "abort-round-1";
  a1.player = 1;
  a1.coin_bits = [](int) { return 0; };
  a1.next = [](int, std::uint64_t, const History&) { return kAbort; };
  out.push_back(std::move(a1));

  MachineSpec a3 = dhr_honest_p1(ell, s);
  a3.name = "abort-round-3";
  auto honest_next = a3.next;
  a3.next = [honest_next](int k, std::uint64_t c, const History& h) -> std::string {
    if (h.size() >= 2) return kAbort;
    return honest_next(k, c, h);
  };
  out.push_back(std::move(a3));

  MachineSpec cc;
  cc.name = "constant-commit";
  cc.player = 1;
  cc.coin_bits = [](int) { return 0; };
  cc.next = [ell, sp](int, std::uint64_t, const History& h) -> std::string {
    std::string coms, decoms;
    for (int i = 0; i < ell; ++i) {
      auto [com, decom] = sp->commit(0, std::string(sp->coin_bits(), '0'));
      coms += (i ? "," : "") + com;
      decoms += (i ? "," : "") + decom;
    }
    return h.empty() ? coms : decoms;
  };
  out.push_back(std::move(cc));
  return out;
}

std::vector<MachineSpec> dhr_p2_registry(int ell, const ToyOWP& toy_f) {
  std::vector<MachineSpec> out;
  out.push_back(dhr_honest_p2(ell));
  for (char bit : {'0', '1'}) {
    MachineSpec m;
    m.name = std::string("constant-") + bit;
    m.player = 2;
    m.coin_bits = [](int) { return 0; };
    m.next = [ell, bit](int, std::uint64_t, const History&) { return std::string(ell, bit); };
    out.push_back(std::move(m));
  }
  MachineSpec a2;
  a2.name = "abort-round-2";
  a2.player = 2;
  a2.coin_bits = [](int) { return 0; };
  a2.next = [](int, std::uint64_t, const History&) { return kAbort; };
  out.push_back(std::move(a2));

  // Decodes toy commitments and answers the complement of r, steering the
  // outcome to the last listed index; unparseable commitments fall back to
  // uniform replies.
  MachineSpec inv;
  inv.name = "brute-invert";
  inv.player = 2;
  inv.coin_bits = [ell](int) { return ell; };
  inv.next = [ell, toy_f](int, std::uint64_t c, const History& h) -> std::string {
    std::string fallback = int_to_bits(c & ((std::uint64_t{1} << ell) - 1), ell);
    if (h.empty()) return fallback;
    std::string reply;
    for (const auto& com : split_tuple(h[0])) {
      if (static_cast<int>(com.size()) != toy_f.n + 1 ||
          !std::all_of(com.begin(), com.end(), [](char ch) { return ch == '0' || ch == '1'; }))
        return fallback;
      std::string x = owp_brute_invert(toy_f, com.substr(0, toy_f.n));
      int parity = 0;
      for (char ch : x) parity ^= ch - '0';
      int bit = (com.back() - '0') ^ parity;
      reply += static_cast<char>('0' + (1 - bit));
    }
    return reply;
  };
  out.push_back(std::move(inv));
  return out;
}

StrategyFilter dhr_filter_p2(const DhrGame& dg, const CommitmentScheme& s) {
  ExtensiveGame pruned = prune_gsml(dg.game);
  MachineSpec honest1 = dhr_honest_p1(dg.ell, s);
  MachineSpec honest2 = dhr_honest_p2(dg.ell);
  return [pruned = std::move(pruned), honest1, honest2](
             const MachineSpec& m, int k, const Rational& eps) -> std::optional<ReducedStrategy> {
    ReducedStrategy rep = strategic_representation(m, k, pruned);
    if (m.player == 2) {
      StrategyProfile honest{strategic_representation(honest1, k, pruned),
                             strategic_representation(honest2, k, pruned)};
      Rational base = expected_payoff(pruned, honest, 2);
      StrategyProfile dev{honest.s1, rep};
      if (expected_payoff(pruned, dev, 2) > base + eps) return std::nullopt;
    }
    return rep;
  };
}

StrategyFilter accept_all_filter(const ExtensiveGame& g) {
  return [&g](const MachineSpec& m, int k, const Rational&) {
    return std::optional<ReducedStrategy>(strategic_representation(m, k, g));
  };
}

}  // namespace tfne
