#pragma once

#include "syz/rational.hpp"

#include <cstdint>
#include <random>

namespace syz {

/// Deterministic seeded generator. std::mt19937_64 has a fully specified
/// sequence, so identical seeds give identical runs on every platform;
/// the distribution helpers below avoid std::uniform_int_distribution,
/// whose output is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
  long long int_in(long long lo, long long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small nonzero integer in [-bound, bound] \ {0}.
  long long nonzero_int(long long bound) {
    long long v = int_in(1, bound);
    return (next() & 1) ? v : -v;
  }

  /// Small rational with numerator in [-bound, bound] and denominator in [1, dbound].
  Rat rat(long long bound, long long dbound = 1) {
    return Rat(int_in(-bound, bound), int_in(1, dbound));
  }

  /// Derives an independent child generator; deterministic in (seed, label).
  Rng child(std::uint64_t label) {
    std::uint64_t x = next() ^ (0x9e3779b97f4a7c15ULL * (label + 1));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return Rng(x);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace syz
