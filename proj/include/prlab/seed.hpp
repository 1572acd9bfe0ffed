#pragma once

#include <cstdint>
#include <random>

namespace prlab {

/// Identifies one random stream. `(base, stream)` fully determines every
/// value drawn from `make_engine`, so replicates only need distinct streams.
struct Seed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;

  /// Child stream for a sub-task (resample attempt, spectral start vector).
  Seed derive(std::uint64_t tag) const {
    return Seed{mix(base ^ mix(stream + 0x632be59bd9b4e019ULL)),
                tag};
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

using Engine = std::mt19937_64;

inline Engine make_engine(const Seed& seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.base),
                    static_cast<std::uint32_t>(seed.base >> 32),
                    static_cast<std::uint32_t>(seed.stream),
                    static_cast<std::uint32_t>(seed.stream >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace prlab
