#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "tfne/crypto.hpp"
#include "tfne/protocols.hpp"

using namespace tfne;

TEST_CASE("bit-string helpers") {
  CHECK(int_to_bits(0, 3) == "000");
  CHECK(int_to_bits(5, 3) == "101");
  CHECK(bits_to_int("101") == 5);
  for (std::uint64_t v = 0; v < 16; ++v) CHECK(bits_to_int(int_to_bits(v, 4)) == v);
}

TEST_CASE("toy permutations") {
  ToyOWP id = ToyOWP::identity(3);
  CHECK(id.violations().empty());
  CHECK(owp_eval(id, "110") == "110");
  CHECK(owp_brute_invert(id, "011") == "011");

  ToyOWP shuf = ToyOWP::shuffled(3, 99);
  CHECK(shuf.violations().empty());
  for (std::uint64_t x = 0; x < 8; ++x) {
    std::string xs = int_to_bits(x, 3);
    CHECK(owp_brute_invert(shuf, owp_eval(shuf, xs)) == xs);
  }
  // Same seed, same table; different seed, (almost surely) different.
  CHECK(ToyOWP::shuffled(3, 99).table == shuf.table);

  std::istringstream good("00 01\n01 00\n10 10\n11 11\n");
  ToyOWP parsed = ToyOWP::from_stream(good);
  CHECK(parsed.violations().empty());
  CHECK(owp_eval(parsed, "00") == "01");

  std::istringstream repeated("00 01\n01 01\n10 10\n11 11\n");
  CHECK_THROWS(ToyOWP::from_stream(repeated));
}

TEST_CASE("ideal commitments: completeness, binding, opacity") {
  for (int k : {2, 3}) {
    IdealCommitment s(k);
    CHECK(s.coin_bits() == k);
    CHECK(check_completeness(s).empty());
    CHECK(check_binding(s).empty());
    // Tokens are pairwise distinct across (bit, coins).
    auto coms = s.commitment_strings();
    CHECK(coms.size() == 2u << k);
    std::sort(coms.begin(), coms.end());
    CHECK(std::adjacent_find(coms.begin(), coms.end()) == coms.end());
  }
}

TEST_CASE("toy commitments: completeness and binding") {
  for (std::uint64_t seed : {1ULL, 7ULL}) {
    ToyCommitment s(ToyOWP::shuffled(3, seed));
    CHECK(check_completeness(s).empty());
    CHECK(check_binding(s).empty());
  }
  // Commitment structure: f(x) followed by the masked bit.
  ToyCommitment id2(ToyOWP::identity(2));
  auto [com, decom] = id2.commit(1, "10");
  CHECK(com == "100");  // f(10) = 10, then 1 xor parity(10) = 0
  CHECK(decom == "10");
  CHECK(id2.verify(com, decom) == 1);
  CHECK(id2.verify("110", "10") == -1);  // wrong image for that decommitment
}

TEST_CASE("hiding advantage by exhaustive enumeration") {
  ToyOWP f = ToyOWP::identity(2);
  ToyCommitment toy(f);
  IdealCommitment ideal(2);

  // Constant guessers never beat 1/2 on any scheme.
  MachineSpec constant;
  constant.name = "constant-0";
  constant.player = 2;
  constant.coin_bits = [](int) { return 0; };
  constant.next = [](int, std::uint64_t, const History&) { return "0"; };
  CHECK(hiding_advantage(toy, constant) == 0);
  CHECK(hiding_advantage(ideal, constant) == 0);

  // The brute inverter decodes every toy commitment but learns nothing from
  // ideal tokens.
  MachineSpec inverter = coinflip_brute_inverter(f);
  CHECK(hiding_advantage(toy, inverter) == Rational(1, 2));
  CHECK(hiding_advantage(ideal, inverter) == 0);

  // The whole guesser registry is blind to the ideal scheme.
  for (const auto& guesser : guesser_registry(f)) {
    CHECK(hiding_advantage(ideal, guesser) == 0);
    CHECK(hiding_advantage(toy, guesser) <= Rational(1, 2));
  }
}
