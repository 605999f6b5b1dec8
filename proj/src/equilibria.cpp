#include "tfne/equilibria.hpp"

#include <algorithm>
#include <functional>

namespace tfne {

int ConstraintSet::member_index(const ExtensiveGame& g, const ReducedStrategy& s) const {
  const auto& list = of(s.player);
  ReducedStrategy cs = canonicalize(g, s);
  for (size_t i = 0; i < list.size(); ++i) {
    ReducedStrategy cm = canonicalize(g, list[i]);
    if (cm.choice == cs.choice) return static_cast<int>(i);
  }
  return -1;
}

NEVerdict is_epsilon_ne(const ExtensiveGame& g, const ConstraintSet& t, const StrategyProfile& p,
                        const Rational& eps) {
  if (t.member_index(g, p.s1) < 0) throw ProfileNotInConstraints(1);
  if (t.member_index(g, p.s2) < 0) throw ProfileNotInConstraints(2);
  for (Player i : {1, 2}) {
    Rational base = expected_payoff(g, p, i);
    for (const auto& dev : t.of(i)) {
      StrategyProfile q = p;
      q.of(i) = dev;
      Rational u = expected_payoff(g, q, i);
      if (u > base + eps) {
        NEVerdict v;
        v.holds = false;
        v.witness = NEVerdict::Witness{i, dev, u - base, -1};
        return v;
      }
    }
  }
  return {};
}

std::pair<Rational, ReducedStrategy> best_response(const ExtensiveGame& g,
                                                   const ReducedStrategy& opponent, Player i,
                                                   int from) {
  ReducedStrategy br;
  br.player = i;
  std::function<Rational(int)> value = [&](int id) -> Rational {
    const auto& n = g.node(id);
    if (n.terminal) return n.payoff(i);
    if (n.owner == i) {
      Rational best;
      int arg = -1;
      for (size_t a = 0; a < n.children.size(); ++a) {
        Rational v = value(n.children[a].second);
        if (arg == -1 || v > best) {
          best = v;
          arg = static_cast<int>(a);
        }
      }
      br.set(id, ActionDist::point(static_cast<int>(n.children.size()), arg));
      return best;
    }
    if (!opponent.has(id)) throw UncoveredHistory(history_key(g.path(id)));
    const ActionDist& d = opponent.at(id);
    Rational v = 0;
    for (size_t a = 0; a < n.children.size(); ++a) {
      if (d.w.at(a) == 0) continue;
      v += d.w[a] * value(n.children[a].second);
    }
    return v;
  };
  Rational v = value(from);
  return {v, br};
}

NEVerdict is_epsilon_ne(const ExtensiveGame& g, const StrategyProfile& p, const Rational& eps) {
  for (Player i : {1, 2}) {
    Rational base = expected_payoff(g, p, i);
    auto [v, br] = best_response(g, p.of(other_player(i)), i);
    if (v > base + eps) {
      NEVerdict out;
      out.holds = false;
      out.witness = NEVerdict::Witness{i, br, v - base, -1};
      return out;
    }
  }
  return {};
}

StrategyProfile spe_backward_induction(const ExtensiveGame& g) {
  StrategyProfile p;
  p.s1.player = 1;
  p.s2.player = 2;
  // Children follow their parents in the flat layout, so a reverse sweep
  // sees every child before its parent.
  std::vector<std::pair<Rational, Rational>> val(g.size());
  for (int id = g.size() - 1; id >= 0; --id) {
    const auto& n = g.node(id);
    if (n.terminal) {
      val[id] = {n.u1, n.u2};
      continue;
    }
    int arg = -1;
    for (size_t a = 0; a < n.children.size(); ++a) {
      const auto& cv = val[n.children[a].second];
      Rational own = n.owner == 1 ? cv.first : cv.second;
      if (arg == -1 || own > (n.owner == 1 ? val[n.children[arg].second].first
                                           : val[n.children[arg].second].second))
        arg = static_cast<int>(a);
    }
    val[id] = val[n.children[arg].second];
    p.of(n.owner).set(id, ActionDist::point(static_cast<int>(n.children.size()), arg));
  }
  return p;
}

NEVerdict is_spe(const ExtensiveGame& g, const StrategyProfile& p, const Rational& eps) {
  for (int h : g.nonterminals()) {
    Player i = g.node(h).owner;
    Rational cond = conditional_payoff(g, p, h, i);
    auto [v, br] = best_response(g, p.of(other_player(i)), i, h);
    if (v > cond + eps) {
      NEVerdict out;
      out.holds = false;
      out.witness = NEVerdict::Witness{i, br, v - cond, h};
      return out;
    }
  }
  return {};
}

namespace {

enum class SolveStatus { kUnique, kUnderdetermined, kInconsistent };

// Gaussian elimination over Rationals on [M | b]; solution written to x.
SolveStatus solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> b,
                         std::vector<Rational>& x) {
  const int n = static_cast<int>(b.size());
  std::vector<int> pivot_col(n, -1);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int pr = -1;
    for (int r = row; r < n; ++r)
      if (m[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr == -1) continue;
    std::swap(m[row], m[pr]);
    std::swap(b[row], b[pr]);
    Rational inv = m[row][col];
    for (int c = col; c < n; ++c) m[row][c] /= inv;
    b[row] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[row][c];
      b[r] -= f * b[row];
    }
    pivot_col[row] = col;
    ++row;
  }
  for (int r = row; r < n; ++r)
    if (b[r] != 0) return SolveStatus::kInconsistent;
  if (row < n) return SolveStatus::kUnderdetermined;
  x.assign(n, Rational(0));
  for (int r = 0; r < n; ++r) x[pivot_col[r]] = b[r];
  return SolveStatus::kUnique;
}

// Solves the indifference system: a mixture over `support` of the chooser's
// opponent making every supported action of `player` worth the same value v.
// payoff(action, j) = player's payoff when it plays `action` and the mixer
// plays the j-th mixture action.
SolveStatus indifference_mixture(const std::vector<int>& own_support,
                                 const std::vector<int>& mix_support,
                                 const std::function<Rational(int, int)>& payoff,
                                 std::vector<Rational>& weights, Rational& value) {
  const int m = static_cast<int>(own_support.size());
  // Unknowns: mixture weights then v. Equations: per supported own action,
  // sum_j payoff * w_j - v = 0; plus sum_j w_j = 1.
  std::vector<std::vector<Rational>> mat(m + 1, std::vector<Rational>(m + 1, Rational(0)));
  std::vector<Rational> rhs(m + 1, Rational(0));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < m; ++j) mat[r][j] = payoff(own_support[r], mix_support[j]);
    mat[r][m] = -1;
  }
  for (int j = 0; j < m; ++j) mat[m][j] = 1;
  rhs[m] = 1;
  std::vector<Rational> x;
  SolveStatus st = solve_linear(std::move(mat), std::move(rhs), x);
  if (st != SolveStatus::kUnique) return st;
  weights.assign(x.begin(), x.begin() + m);
  value = x[m];
  return st;
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

BimatrixNEList bimatrix_ne_enumerate(const NormalFormGame& nf) {
  if (nf.rows() > 5 || nf.cols() > 5) throw TooLarge("bimatrix enumeration supports up to 5x5");
  BimatrixNEList out;
  auto u1 = [&](int r, int c) { return nf.at(r, c).first; };
  auto u2 = [&](int r, int c) { return nf.at(r, c).second; };
  int maxm = std::min(nf.rows(), nf.cols());
  for (int m = 1; m <= maxm; ++m) {
    std::vector<std::vector<int>> rowsups, colsups;
    subsets_of_size(nf.rows(), m, rowsups);
    subsets_of_size(nf.cols(), m, colsups);
    for (const auto& sr : rowsups) {
      for (const auto& sc : colsups) {
        // Column mixture making the supported rows indifferent (value v1),
        // row mixture making the supported columns indifferent (value v2).
        std::vector<Rational> y, x;
        Rational v1, v2;
        SolveStatus st1 = indifference_mixture(sr, sc, u1, y, v1);
        SolveStatus st2 = indifference_mixture(
            sc, sr, [&](int c, int r) { return u2(r, c); }, x, v2);
        if (st1 == SolveStatus::kUnderdetermined || st2 == SolveStatus::kUnderdetermined)
          out.degenerate = true;
        if (st1 != SolveStatus::kUnique || st2 != SolveStatus::kUnique) continue;
        bool feasible = std::all_of(x.begin(), x.end(), [](const Rational& w) { return w > 0; }) &&
                        std::all_of(y.begin(), y.end(), [](const Rational& w) { return w > 0; });
        if (!feasible) continue;
        // Mutual best response against off-support actions.
        bool best = true;
        for (int r = 0; r < nf.rows() && best; ++r) {
          if (std::find(sr.begin(), sr.end(), r) != sr.end()) continue;
          Rational v = 0;
          for (int j = 0; j < m; ++j) v += y[j] * u1(r, sc[j]);
          if (v > v1) best = false;
          if (v == v1) out.degenerate = true;
        }
        for (int c = 0; c < nf.cols() && best; ++c) {
          if (std::find(sc.begin(), sc.end(), c) != sc.end()) continue;
          Rational v = 0;
          for (int j = 0; j < m; ++j) v += x[j] * u2(sr[j], c);
          if (v > v2) best = false;
          if (v == v2) out.degenerate = true;
        }
        if (!best) continue;
        BimatrixEquilibrium eq;
        eq.profile.row.assign(nf.rows(), Rational(0));
        eq.profile.col.assign(nf.cols(), Rational(0));
        for (int j = 0; j < m; ++j) {
          eq.profile.row[sr[j]] = x[j];
          eq.profile.col[sc[j]] = y[j];
        }
        auto [e1, e2] = expected_payoffs(nf, eq.profile);
        eq.u1 = e1;
        eq.u2 = e2;
        bool dup = std::any_of(out.list.begin(), out.list.end(), [&](const BimatrixEquilibrium& o) {
          return o.profile.row == eq.profile.row && o.profile.col == eq.profile.col;
        });
        if (!dup) out.list.push_back(std::move(eq));
      }
    }
  }
  return out;
}

const BimatrixEquilibrium& worst_ne_for(const NormalFormGame& nf, Player i,
                                        const BimatrixNEList& nes) {
  (void)nf;
  if (nes.list.empty()) throw GameError("empty equilibrium list");
  size_t arg = 0;
  for (size_t j = 1; j < nes.list.size(); ++j) {
    const Rational& cur = i == 1 ? nes.list[j].u1 : nes.list[j].u2;
    const Rational& best = i == 1 ? nes.list[arg].u1 : nes.list[arg].u2;
    if (cur < best) arg = j;
  }
  return nes.list[arg];
}

ParetoVerdict is_weakly_pareto_optimal(const ExtensiveGame& g, const ConstraintSet& t,
                                       const StrategyProfile& p) {
  if (t.member_index(g, p.s1) < 0) throw ProfileNotInConstraints(1);
  if (t.member_index(g, p.s2) < 0) throw ProfileNotInConstraints(2);
  Rational b1 = expected_payoff(g, p, 1);
  Rational b2 = expected_payoff(g, p, 2);
  for (size_t i = 0; i < t.t1.size(); ++i) {
    for (size_t j = 0; j < t.t2.size(); ++j) {
      StrategyProfile q{t.t1[i], t.t2[j]};
      if (expected_payoff(g, q, 1) > b1 && expected_payoff(g, q, 2) > b2) {
        ParetoVerdict v;
        v.holds = false;
        v.witness = {static_cast<int>(i), static_cast<int>(j)};
        return v;
      }
    }
  }
  return {};
}

HullDominance ce_hull_dominated(const BimatrixNEList& nes,
                                const std::pair<Rational, Rational>& pi) {
  const auto& list = nes.list;
  HullDominance out;
  out.weights.assign(list.size(), Rational(0));
  for (size_t i = 0; i < list.size(); ++i) {
    if (list[i].u1 > pi.first && list[i].u2 > pi.second) {
      out.dominated = true;
      out.weights[i] = 1;
      return out;
    }
  }
  // A dominating interior point of the hull implies a dominating point on
  // some segment between two listed vertices, so pairs suffice in 2-D.
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = i + 1; j < list.size(); ++j) {
      // Feasible lambda in [0,1] with lambda*a + (1-lambda)*b > pi
      // componentwise; each strict inequality clips an open half-line.
      Rational lo = 0, hi = 1;
      bool feasible = true;
      auto clip = [&](const Rational& a, const Rational& b, const Rational& target) {
        Rational c = a - b, d = target - b;
        if (c > 0) {
          lo = std::max(lo, Rational(d / c));
        } else if (c < 0) {
          hi = std::min(hi, Rational(d / c));
        } else if (d >= 0) {
          feasible = false;
        }
      };
      clip(list[i].u1, list[j].u1, pi.first);
      clip(list[i].u2, list[j].u2, pi.second);
      if (!feasible || lo >= hi) continue;
      Rational lambda = (lo + hi) / 2;
      Rational p1 = lambda * list[i].u1 + (1 - lambda) * list[j].u1;
      Rational p2 = lambda * list[i].u2 + (1 - lambda) * list[j].u2;
      if (p1 > pi.first && p2 > pi.second) {
        out.dominated = true;
        out.weights[i] = lambda;
        out.weights[j] = 1 - lambda;
        return out;
      }
    }
  }
  return out;
}

NEVerdict is_epsilon_safe(const ExtensiveGame& g, const ConstraintSet& t, const StrategyProfile& p,
                          const Rational& eps) {
  if (t.member_index(g, p.s1) < 0) throw ProfileNotInConstraints(1);
  if (t.member_index(g, p.s2) < 0) throw ProfileNotInConstraints(2);
  for (Player i : {1, 2}) {
    Player j = other_player(i);
    Rational base = expected_payoff(g, p, j);
    for (const auto& dev : t.of(i)) {
      StrategyProfile q = p;
      q.of(i) = dev;
      Rational u = expected_payoff(g, q, j);
      if (u < base - eps) {
        NEVerdict v;
        v.holds = false;
        v.witness = NEVerdict::Witness{i, dev, base - u, -1};
        return v;
      }
    }
  }
  return {};
}

}  // namespace tfne
