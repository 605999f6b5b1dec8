#include "tfne/crypto.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace tfne {

std::string int_to_bits(std::uint64_t v, int width) {
  std::string out(width, '0');
  for (int i = width - 1; i >= 0; --i, v >>= 1)
    if (v & 1) out[i] = '1';
  return out;
}

std::uint64_t bits_to_int(const std::string& bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw BadLength("not a bit string: '" + bits + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

namespace {

int parity(const std::string& bits) {
  int p = 0;
  for (char c : bits) p ^= c - '0';
  return p;
}

}  // namespace

ToyOWP ToyOWP::identity(int n) {
  ToyOWP f;
  f.n = n;
  f.table.resize(std::uint64_t{1} << n);
  for (std::uint64_t x = 0; x < f.table.size(); ++x) f.table[x] = x;
  return f;
}

ToyOWP ToyOWP::shuffled(int n, std::uint64_t seed) {
  ToyOWP f = identity(n);
  std::mt19937_64 rng(seed);
  std::shuffle(f.table.begin(), f.table.end(), rng);
  return f;
}

ToyOWP ToyOWP::from_stream(std::istream& in) {
  ToyOWP f;
  std::string x, y;
  std::map<std::uint64_t, std::uint64_t> entries;
  while (in >> x >> y) {
    if (f.n == 0) f.n = static_cast<int>(x.size());
    if (static_cast<int>(x.size()) != f.n || static_cast<int>(y.size()) != f.n)
      throw BadLength("inconsistent bit length in permutation file");
    if (!entries.emplace(bits_to_int(x), bits_to_int(y)).second)
      throw GameError("duplicate permutation input " + x);
  }
  if (f.n == 0) throw GameError("empty permutation file");
  f.table.assign(std::uint64_t{1} << f.n, 0);
  if (entries.size() != f.table.size()) throw GameError("permutation file is not total");
  for (const auto& [from, to] : entries) f.table[from] = to;
  auto v = f.violations();
  if (!v.empty()) throw GameError("permutation file: " + v.front());
  return f;
}

std::vector<std::string> ToyOWP::violations() const {
  std::vector<std::string> out;
  std::uint64_t size = std::uint64_t{1} << n;
  if (table.size() != size) {
    out.push_back("table has " + std::to_string(table.size()) + " entries, expected " +
                  std::to_string(size));
    return out;
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (table[x] >= size)
      out.push_back("value out of range at input " + int_to_bits(x, n));
    else if (!seen.insert(table[x]).second)
      out.push_back("repeated value " + int_to_bits(table[x], n));
  }
  return out;
}

std::string owp_eval(const ToyOWP& f, const std::string& x) {
  if (static_cast<int>(x.size()) != f.n) throw BadLength("input length != n");
  return int_to_bits(f.table.at(bits_to_int(x)), f.n);
}

std::string owp_brute_invert(const ToyOWP& f, const std::string& y) {
  if (static_cast<int>(y.size()) != f.n) throw BadLength("output length != n");
  std::uint64_t target = bits_to_int(y);
  for (std::uint64_t x = 0; x < f.table.size(); ++x)
    if (f.table[x] == target) return int_to_bits(x, f.n);
  throw GameError("value not in permutation image: " + y);
}

std::vector<std::string> CommitmentScheme::commitment_strings() const {
  std::vector<std::string> out;
  for (int b : {0, 1}) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << coin_bits()); ++c) {
      std::string com = commit(b, int_to_bits(c, coin_bits())).first;
      if (std::find(out.begin(), out.end(), com) == out.end()) out.push_back(com);
    }
  }
  return out;
}

std::pair<std::string, std::string> IdealCommitment::commit(int bit,
                                                            const std::string& coins) const {
  if (static_cast<int>(coins.size()) != k_) throw BadCoinLength("need " + std::to_string(k_) +
                                                               " coin bits");
  std::uint64_t serial = (static_cast<std::uint64_t>(bit) << k_) | bits_to_int(coins);
  return {"c" + std::to_string(serial), std::to_string(bit) + ":" + coins};
}

int IdealCommitment::verify(const std::string& com, const std::string& decom) const {
  if (decom.size() != static_cast<size_t>(k_) + 2 || decom[1] != ':') return -1;
  int bit = decom[0] - '0';
  if (bit != 0 && bit != 1) return -1;
  std::string coins = decom.substr(2);
  for (char c : coins)
    if (c != '0' && c != '1') return -1;
  return commit(bit, coins).first == com ? bit : -1;
}

std::pair<std::string, std::string> ToyCommitment::commit(int bit,
                                                          const std::string& coins) const {
  if (static_cast<int>(coins.size()) != f_.n)
    throw BadCoinLength("need " + std::to_string(f_.n) + " coin bits");
  std::string com = owp_eval(f_, coins);
  com.push_back(static_cast<char>('0' + (bit ^ parity(coins))));
  return {com, coins};
}

int ToyCommitment::verify(const std::string& com, const std::string& decom) const {
  if (com.size() != static_cast<size_t>(f_.n) + 1 ||
      decom.size() != static_cast<size_t>(f_.n))
    return -1;
  for (char c : decom)
    if (c != '0' && c != '1') return -1;
  if (owp_eval(f_, decom) != com.substr(0, f_.n)) return -1;
  return (com.back() - '0') ^ parity(decom);
}

std::vector<std::string> check_completeness(const CommitmentScheme& s) {
  std::vector<std::string> out;
  for (int b : {0, 1}) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.coin_bits()); ++c) {
      std::string coins = int_to_bits(c, s.coin_bits());
      auto [com, decom] = s.commit(b, coins);
      if (s.verify(com, decom) != b)
        out.push_back("verify(commit(" + std::to_string(b) + ", " + coins + ")) != " +
                      std::to_string(b));
    }
  }
  return out;
}

std::vector<std::string> check_binding(const CommitmentScheme& s) {
  std::vector<std::string> out;
  std::map<std::string, std::set<int>> bits_of;
  std::set<std::string> decoms;
  for (int b : {0, 1})
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.coin_bits()); ++c)
      decoms.insert(s.commit(b, int_to_bits(c, s.coin_bits())).second);
  for (const auto& com : s.commitment_strings())
    for (const auto& decom : decoms) {
      int b = s.verify(com, decom);
      if (b != -1) bits_of[com].insert(b);
    }
  for (const auto& [com, bits] : bits_of)
    if (bits.size() > 1) out.push_back("commitment " + com + " opens to both bits");
  return out;
}

Rational hiding_advantage(const CommitmentScheme& s, const MachineSpec& guesser) {
  int gbits = guesser.coin_bits(s.k());
  if (s.coin_bits() + gbits + 1 > 24) throw EnumerationTooLarge("combined coin space > 2^24");
  std::uint64_t correct = 0, total = 0;
  for (int b : {0, 1}) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.coin_bits()); ++c) {
      std::string com = s.commit(b, int_to_bits(c, s.coin_bits())).first;
      for (std::uint64_t gc = 0; gc < (std::uint64_t{1} << gbits); ++gc) {
        std::string guess = guesser.next(s.k(), gc, {com});
        if (guess == std::to_string(b)) ++correct;
        ++total;
      }
    }
  }
  return Rational(correct, total) - Rational(1, 2);
}

}  // namespace tfne
