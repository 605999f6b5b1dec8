#include "tfne/io.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace tfne {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

// Splits "key=value"; throws when the token has no '='.
std::pair<std::string, std::string> split_kv(const Line& line, const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ParseError(line.number, "expected <key>=<value>, got '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

int parse_int(const Line& line, const std::string& tok) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  }
}

Rational parse_rat(const Line& line, const std::string& tok) {
  try {
    return parse_rational(tok);
  } catch (const std::exception& e) {
    throw ParseError(line.number, std::string(e.what()));
  }
}

Player parse_player(const Line& line, const std::string& tok) {
  int p = parse_int(line, tok);
  if (p != 1 && p != 2) throw ParseError(line.number, "player must be 1 or 2");
  return p;
}

History split_history(const Line& line, const std::string& key) {
  if (key == "/") return {};
  History h;
  std::string part;
  std::istringstream in(key);
  while (std::getline(in, part, '/')) {
    if (part.empty()) throw ParseError(line.number, "empty action label in '" + key + "'");
    h.push_back(part);
  }
  return h;
}

}  // namespace

ExtensiveGame parse_extensive_game(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "extensive")
    throw ParseError(lines.empty() ? 1 : lines.front().number, "expected header 'extensive'");

  struct NodeDef {
    int line;
    bool leaf;
    Player player = 0;
    std::vector<std::pair<std::string, int>> children;
    Rational u1, u2;
  };
  std::map<int, NodeDef> defs;
  int root_id = -1, root_line = -1;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] == "node" || t[0] == "leaf") {
      if (t.size() < 2) throw ParseError(line.number, "missing node id");
      int id = parse_int(line, t[1]);
      if (defs.count(id)) throw ParseError(line.number, "duplicate id " + t[1]);
      NodeDef d{line.number, t[0] == "leaf"};
      bool have_u1 = false, have_u2 = false;
      for (size_t j = 2; j < t.size(); ++j) {
        auto [key, value] = split_kv(line, t[j]);
        if (!d.leaf && key == "player") {
          d.player = parse_player(line, value);
        } else if (d.leaf && key == "u1") {
          d.u1 = parse_rat(line, value);
          have_u1 = true;
        } else if (d.leaf && key == "u2") {
          d.u2 = parse_rat(line, value);
          have_u2 = true;
        } else if (!d.leaf) {
          d.children.emplace_back(key, parse_int(line, value));
        } else {
          throw ParseError(line.number, "unexpected field '" + key + "' on a leaf");
        }
      }
      if (!d.leaf && d.player == 0) throw ParseError(line.number, "node without player=");
      if (!d.leaf && d.children.empty()) throw ParseError(line.number, "node without children");
      if (d.leaf && (!have_u1 || !have_u2)) throw ParseError(line.number, "leaf needs u1= and u2=");
      defs.emplace(id, std::move(d));
    } else if (t[0] == "root") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'root <id>'");
      root_id = parse_int(line, t[1]);
      root_line = line.number;
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }
  if (root_id == -1) throw ParseError(lines.back().number, "missing 'root <id>' line");
  if (!defs.count(root_id)) throw ParseError(root_line, "dangling root id " + std::to_string(root_id));

  ExtensiveGame g;
  std::vector<int> visiting;
  std::function<void(int, int)> build = [&](int def_id, int node) {
    const NodeDef& d = defs.at(def_id);
    if (std::find(visiting.begin(), visiting.end(), def_id) != visiting.end())
      throw ParseError(d.line, "cycle through id " + std::to_string(def_id));
    if (d.leaf) {
      g.make_terminal(node, d.u1, d.u2);
      return;
    }
    g.set_owner(node, d.player);
    visiting.push_back(def_id);
    for (const auto& [label, child_id] : d.children) {
      if (!defs.count(child_id))
        throw ParseError(d.line, "dangling child id " + std::to_string(child_id));
      int c = g.add_child(node, label);
      build(child_id, c);
    }
    visiting.pop_back();
  };
  build(root_id, g.root());

  // Alternation is structural: flag it when owners strictly alternate by round.
  bool alternating = true;
  std::vector<Player> owners(static_cast<size_t>(g.max_round()), 0);
  for (int id = 0; id < g.size() && alternating; ++id) {
    const auto& n = g.node(id);
    if (n.terminal) continue;
    Player& slot = owners[static_cast<size_t>(n.round - 1)];
    if (slot == 0)
      slot = n.owner;
    else if (slot != n.owner)
      alternating = false;
  }
  for (size_t r = 1; r < owners.size() && alternating; ++r)
    if (owners[r] != 0 && owners[r - 1] != 0 && owners[r] == owners[r - 1]) alternating = false;
  g.set_alternating(alternating);
  return g;
}

std::string emit_extensive_game(const ExtensiveGame& g) {
  std::ostringstream out;
  out << "extensive\n";
  for (int id = 0; id < g.size(); ++id) {
    const auto& n = g.node(id);
    if (n.terminal) {
      out << "leaf " << id << " u1=" << format_rational(n.u1) << " u2=" << format_rational(n.u2)
          << "\n";
    } else {
      out << "node " << id << " player=" << n.owner;
      for (const auto& [label, c] : n.children) out << " " << label << "=" << c;
      out << "\n";
    }
  }
  out << "root " << g.root() << "\n";
  return out.str();
}

NormalFormGame parse_bimatrix(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "bimatrix" ||
      lines.front().tokens.size() != 3)
    throw ParseError(lines.empty() ? 1 : lines.front().number,
                     "expected header 'bimatrix <rows> <cols>'");
  int rows = parse_int(lines.front(), lines.front().tokens[1]);
  int cols = parse_int(lines.front(), lines.front().tokens[2]);
  if (rows < 1 || cols < 1) throw ParseError(lines.front().number, "dimensions must be positive");
  if (static_cast<int>(lines.size()) != rows + 1)
    throw ParseError(lines.back().number,
                     "expected " + std::to_string(rows) + " matrix rows");
  NormalFormGame nf;
  for (int r = 0; r < rows; ++r) nf.row_actions.push_back("r" + std::to_string(r + 1));
  for (int c = 0; c < cols; ++c) nf.col_actions.push_back("c" + std::to_string(c + 1));
  for (int r = 0; r < rows; ++r) {
    const Line& line = lines[static_cast<size_t>(r) + 1];
    if (static_cast<int>(line.tokens.size()) != cols)
      throw ParseError(line.number, "expected " + std::to_string(cols) + " cells");
    std::vector<std::pair<Rational, Rational>> row;
    for (const std::string& cell : line.tokens) {
      if (cell.size() < 5 || cell.front() != '(' || cell.back() != ')')
        throw ParseError(line.number, "expected (<rat>,<rat>), got '" + cell + "'");
      auto comma = cell.find(',');
      if (comma == std::string::npos)
        throw ParseError(line.number, "expected (<rat>,<rat>), got '" + cell + "'");
      row.emplace_back(parse_rat(line, cell.substr(1, comma - 1)),
                       parse_rat(line, cell.substr(comma + 1, cell.size() - comma - 2)));
    }
    nf.payoffs.push_back(std::move(row));
  }
  return nf;
}

std::string emit_bimatrix(const NormalFormGame& nf) {
  std::ostringstream out;
  out << "bimatrix " << nf.rows() << " " << nf.cols() << "\n";
  for (int r = 0; r < nf.rows(); ++r) {
    for (int c = 0; c < nf.cols(); ++c)
      out << (c ? " " : "") << "(" << format_rational(nf.at(r, c).first) << ","
          << format_rational(nf.at(r, c).second) << ")";
    out << "\n";
  }
  return out.str();
}

std::variant<ExtensiveGame, NormalFormGame> parse_game_file(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty game file");
  const std::string& header = lines.front().tokens.front();
  if (header == "extensive") return parse_extensive_game(text);
  if (header == "bimatrix") return parse_bimatrix(text);
  throw ParseError(lines.front().number, "unknown game header '" + header + "'");
}

ReducedStrategy parse_strategy(const std::string& text, const ExtensiveGame& g) {
  auto lines = tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "strategy" ||
      lines.front().tokens.size() != 2)
    throw ParseError(lines.empty() ? 1 : lines.front().number,
                     "expected header 'strategy player=<1|2>'");
  auto [hk, hv] = split_kv(lines.front(), lines.front().tokens[1]);
  if (hk != "player") throw ParseError(lines.front().number, "expected player=<1|2>");
  ReducedStrategy s;
  s.player = parse_player(lines.front(), hv);
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] != "at" || t.size() < 4 || t[2] != ":")
      throw ParseError(line.number, "expected 'at <history> : <label>=<rat> ...'");
    History h = split_history(line, t[1]);
    int id;
    try {
      id = g.find(h);
    } catch (const NotAHistory&) {
      throw ParseError(line.number, "no such history: " + t[1]);
    }
    const auto& n = g.node(id);
    if (n.terminal) throw ParseError(line.number, "terminal history: " + t[1]);
    if (n.owner != s.player) throw ParseError(line.number, "history owned by the other player");
    if (s.has(id)) throw ParseError(line.number, "duplicate history: " + t[1]);
    ActionDist d;
    d.w.assign(n.children.size(), Rational(0));
    for (size_t j = 3; j < t.size(); ++j) {
      auto [label, value] = split_kv(line, t[j]);
      int c = g.child(id, label);
      if (c == -1) throw ParseError(line.number, "no action '" + label + "' at " + t[1]);
      d.w[static_cast<size_t>(g.node(c).action_index)] = parse_rat(line, value);
    }
    s.set(id, std::move(d));
  }
  return s;
}

std::string emit_strategy(const ExtensiveGame& g, const ReducedStrategy& s) {
  std::ostringstream out;
  out << "strategy player=" << s.player << "\n";
  for (const auto& [id, d] : s.choice) {
    out << "at " << history_key(g.path(id)) << " :";
    const auto& children = g.node(id).children;
    for (size_t a = 0; a < d.w.size(); ++a)
      if (d.w[a] != 0) out << " " << children[a].first << "=" << format_rational(d.w[a]);
    out << "\n";
  }
  return out.str();
}

ConstraintFile parse_constraint_file(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines.front().tokens.front() != "constraints")
    throw ParseError(lines.empty() ? 1 : lines.front().number, "expected header 'constraints'");
  ConstraintFile cf;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 2)
      throw ParseError(line.number, "expected '<1|2> <strategy-file-path>'");
    Player p = parse_player(line, line.tokens[0]);
    (p == 1 ? cf.paths1 : cf.paths2).push_back(line.tokens[1]);
  }
  return cf;
}

std::string emit_constraint_file(const ConstraintFile& cf) {
  std::ostringstream out;
  out << "constraints\n";
  for (const auto& p : cf.paths1) out << "1 " << p << "\n";
  for (const auto& p : cf.paths2) out << "2 " << p << "\n";
  return out.str();
}

ConstraintSet load_constraint_set(const ConstraintFile& cf, const ExtensiveGame& g,
                                  const std::string& base_dir) {
  ConstraintSet t;
  auto load = [&](const std::vector<std::string>& paths, Player p) {
    for (const auto& path : paths) {
      std::filesystem::path full(path);
      if (full.is_relative() && !base_dir.empty()) full = std::filesystem::path(base_dir) / full;
      ReducedStrategy s = parse_strategy(read_file(full.string()), g);
      if (s.player != p)
        throw GameError("constraint file lists " + path + " under player " + std::to_string(p) +
                        " but it declares player " + std::to_string(s.player));
      t.of(p).push_back(std::move(s));
    }
  };
  load(cf.paths1, 1);
  load(cf.paths2, 2);
  return t;
}

std::vector<std::pair<int, Rational>> parse_ce_file(const std::string& text) {
  auto lines = tokenize(text);
  std::vector<std::pair<int, Rational>> ce;
  for (const Line& line : lines) {
    if (line.tokens.size() != 2)
      throw ParseError(line.number, "expected '<ne-index> <dyadic-rat>'");
    int idx = parse_int(line, line.tokens[0]);
    Rational w = parse_rat(line, line.tokens[1]);
    if (idx < 0) throw ParseError(line.number, "index must be nonnegative");
    if (!is_dyadic(w)) throw ParseError(line.number, "weight must be dyadic");
    ce.emplace_back(idx, w);
  }
  if (ce.empty()) throw ParseError(1, "empty correlated-equilibrium file");
  return ce;
}

std::string emit_ce_file(const std::vector<std::pair<int, Rational>>& ce) {
  std::ostringstream out;
  for (const auto& [idx, w] : ce) out << idx << " " << format_rational(w) << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GameError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tfne
