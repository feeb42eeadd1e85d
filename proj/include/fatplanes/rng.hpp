#pragma once

#include <cstdint>
#include <vector>

#include "fatplanes/prime_field.hpp"

namespace fatplanes {

// SplitMix64 (Steele-Lea-Flood mixing constants).  Hand-rolled so the stream
// for a given seed is identical on every platform; <random> distributions are
// implementation-defined and would break replayability.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform value in [0, bound) by rejection, bias-free
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~0ULL - ~0ULL % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

// Deterministic per-trial seed: trial i of a run seeded with `master` always
// uses child_seed(master, i), so concurrent trial loops reproduce the
// sequential results exactly.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  return g.next();
}

// count uniform residues in [0, p), reproducible from (count, p, seed)
std::vector<std::uint64_t> seeded_sample(std::size_t count,
                                         const PrimeField& field,
                                         std::uint64_t seed);

}  // namespace fatplanes
