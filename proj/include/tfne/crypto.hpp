#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "tfne/game.hpp"

namespace tfne {

struct BadLength : GameError {
  using GameError::GameError;
};
struct BadCoinLength : BadLength {
  using BadLength::BadLength;
};
struct EnumerationTooLarge : GameError {
  using GameError::GameError;
};

std::string int_to_bits(std::uint64_t v, int width);
std::uint64_t bits_to_int(const std::string& bits);

// An explicit permutation of {0,1}^n; inputs and outputs are n-bit strings.
struct ToyOWP {
  int n = 0;
  std::vector<std::uint64_t> table;  // table[x] = f(x)

  static ToyOWP identity(int n);
  // Seeded Fisher-Yates shuffle of the identity table.
  static ToyOWP shuffled(int n, std::uint64_t seed);
  // Lines "x y" in binary; must describe a bijection.
  static ToyOWP from_stream(std::istream& in);

  std::vector<std::string> violations() const;  // empty iff a bijection
};

std::string owp_eval(const ToyOWP& f, const std::string& x);
std::string owp_brute_invert(const ToyOWP& f, const std::string& y);

// A desk-scale stand-in for an interactive machine: a total, deterministic
// next-message function of (security parameter, coins, message history).
// Output not in the game's action set at the current history is read as
// abort.
struct MachineSpec {
  std::string name;
  Player player = 1;
  std::function<int(int)> coin_bits;  // coin budget in bits, per k
  std::function<std::string(int k, std::uint64_t coins, const History& history)> next;
};

// Non-interactive bit commitment: commit consumes the committed bit and a
// coin string of exactly coin_bits(k) bits; verify recovers the bit or
// rejects (-1).
class CommitmentScheme {
 public:
  virtual ~CommitmentScheme() = default;

  virtual std::string name() const = 0;
  virtual int k() const = 0;
  virtual int coin_bits() const = 0;
  virtual std::pair<std::string, std::string> commit(int bit, const std::string& coins) const = 0;
  virtual int verify(const std::string& com, const std::string& decom) const = 0;

  // All commitment strings producible by commit, in a fixed order; these
  // become round-1 action alphabets in protocol games.
  std::vector<std::string> commitment_strings() const;
};

// Opaque serial tokens over (bit, coins) pairs: the token string carries no
// structure a registered guesser interprets, decommitment reveals the pair.
// Perfectly binding because the token determines the pair.
class IdealCommitment : public CommitmentScheme {
 public:
  explicit IdealCommitment(int k) : k_(k) {}
  std::string name() const override { return "ideal"; }
  int k() const override { return k_; }
  int coin_bits() const override { return k_; }
  std::pair<std::string, std::string> commit(int bit, const std::string& coins) const override;
  int verify(const std::string& com, const std::string& decom) const override;

 private:
  int k_;
};

// commit(b, x) = (f(x) || b xor parity(x)), decommitment x. Perfectly
// binding since f is a permutation; deliberately breakable by brute
// inversion, which strategy filters must catch.
class ToyCommitment : public CommitmentScheme {
 public:
  explicit ToyCommitment(ToyOWP f) : f_(std::move(f)) {}
  std::string name() const override { return "toy"; }
  int k() const override { return f_.n; }
  int coin_bits() const override { return f_.n; }
  std::pair<std::string, std::string> commit(int bit, const std::string& coins) const override;
  int verify(const std::string& com, const std::string& decom) const override;
  const ToyOWP& owp() const { return f_; }

 private:
  ToyOWP f_;
};

// Exhaustive checks of the scheme invariants; empty report iff they hold.
std::vector<std::string> check_completeness(const CommitmentScheme& s);
std::vector<std::string> check_binding(const CommitmentScheme& s);

// Exact Pr[guess = b] - 1/2 over uniform bit, scheme coins, and guesser
// coins; the guesser sees the commitment string as its one-message history.
Rational hiding_advantage(const CommitmentScheme& s, const MachineSpec& guesser);

}  // namespace tfne
