// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random source. Doubles are derived from raw 64-bit draws
// so streams are reproducible across standard libraries, and substreams
// are derived from a master seed by counter so parallel and serial
// execution order cannot change results.
#pragma once

#include <cstdint>
#include <random>

namespace pinchopt {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Independent substream `counter` of a master seed.
  static Rng substream(std::uint64_t master, std::uint64_t counter) {
    return Rng(splitmix64(master + 0x9e3779b97f4a7c15ULL * (counter + 1)));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace pinchopt
