#pragma once

#include <variant>

#include "tfne/equilibria.hpp"

namespace tfne {

struct ParseError : std::runtime_error {
  int line;

  ParseError(int line_no, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}
};

// --- extensive game files -----------------------------------------------------
// Header `extensive`; then `node <id> player=<1|2> <label>=<child-id> ...`,
// `leaf <id> u1=<rat> u2=<rat>`, and a final `root <id>`.

ExtensiveGame parse_extensive_game(const std::string& text);
std::string emit_extensive_game(const ExtensiveGame& g);

// --- bimatrix files -----------------------------------------------------------
// Header `bimatrix <rows> <cols>`; one line per row of `(<rat>,<rat>)` cells.
// Action labels are positional (r1..., c1...).

NormalFormGame parse_bimatrix(const std::string& text);
std::string emit_bimatrix(const NormalFormGame& nf);

// Dispatches on the header line.
std::variant<ExtensiveGame, NormalFormGame> parse_game_file(const std::string& text);

// --- strategy files -----------------------------------------------------------
// Header `strategy player=<1|2>`; lines `at <slash-joined-labels|/> : <label>=<rat> ...`.
// Unlisted actions get weight zero. Histories resolve against g.

ReducedStrategy parse_strategy(const std::string& text, const ExtensiveGame& g);
std::string emit_strategy(const ExtensiveGame& g, const ReducedStrategy& s);

// --- constraint files ---------------------------------------------------------
// Header `constraints`; lines `<1|2> <strategy-file-path>`. The paths are
// returned verbatim; load_constraint_set resolves them relative to base_dir.

struct ConstraintFile {
  std::vector<std::string> paths1, paths2;
};

ConstraintFile parse_constraint_file(const std::string& text);
std::string emit_constraint_file(const ConstraintFile& cf);
ConstraintSet load_constraint_set(const ConstraintFile& cf, const ExtensiveGame& g,
                                  const std::string& base_dir);

// --- correlated-equilibrium files ---------------------------------------------
// Lines `<ne-index> <dyadic-rat>`; indices refer to a bimatrix NE list.

std::vector<std::pair<int, Rational>> parse_ce_file(const std::string& text);
std::string emit_ce_file(const std::vector<std::pair<int, Rational>>& ce);

std::string read_file(const std::string& path);  // throws GameError on failure

}  // namespace tfne
