#pragma once

#include <cstdint>
#include <random>

namespace fairspread {

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform generator on top of mt19937_64. Doubles are produced by explicit
// bit manipulation instead of std::uniform_real_distribution, whose output
// is implementation defined; the same seed must reproduce the same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n), n >= 1, by rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

// Named seed streams. Deriving every generator through a (base, stream,
// index) triple keeps e.g. algorithm-side and evaluation-side samples on
// provably disjoint streams.
enum class SeedStream : std::uint64_t {
  kInstance = 1,
  kWeights = 2,
  kCommunities = 3,
  kAlgorithmSample = 4,
  kEvaluationSample = 5,
  kIndependentDraws = 6,
  kAlgorithm = 7,
  kTest = 8,
};

inline std::uint64_t derive_seed(std::uint64_t base, SeedStream stream,
                                 std::uint64_t index = 0) {
  const std::uint64_t h = mix64(base ^ mix64(static_cast<std::uint64_t>(stream)));
  return mix64(h ^ mix64(index));
}

}  // namespace fairspread
