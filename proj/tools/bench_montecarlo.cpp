// Benchmarks the parallel outcome-frequency kernel against the serial
// reference and asserts bit-identical counts.
#include <chrono>
#include <iostream>

#include "tfne/montecarlo.hpp"
#include "tfne/protocols.hpp"

int main(int argc, char** argv) {
  using namespace tfne;
  int k = argc > 1 ? std::atoi(argv[1]) : 3;
  std::uint64_t runs = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2'000'000;
  std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 42;

  IdealCommitment scheme(k);
  ExtensiveGame g = build_coinflip_game(scheme);
  MachineSpec m1 = coinflip_honest_p1(scheme);
  MachineSpec m2 = coinflip_honest_p2();

  auto time = [&](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    auto counts = fn();
    auto stop = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(stop - start).count();
    return std::pair(counts, secs);
  };

  auto [serial, serial_secs] =
      time([&] { return empirical_outcome_distribution_serial(g, m1, m2, k, runs, seed); });
  auto [parallel, parallel_secs] =
      time([&] { return empirical_outcome_distribution(g, m1, m2, k, runs, seed); });

  std::cout << "coinflip k=" << k << " runs=" << runs << " seed=" << seed << "\n"
            << "serial:   " << serial_secs << " s\n"
            << "parallel: " << parallel_secs << " s (speedup "
            << (parallel_secs > 0 ? serial_secs / parallel_secs : 0.0) << "x)\n";
  if (serial != parallel) {
    std::cout << "MISMATCH: parallel counts differ from the serial reference\n";
    return 1;
  }
  std::cout << "counts identical across implementations\n";
  return 0;
}
