#include "fatplanes/rng.hpp"

namespace fatplanes {

std::vector<std::uint64_t> seeded_sample(std::size_t count,
                                         const PrimeField& field,
                                         std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.below(field.modulus()));
  return out;
}

}  // namespace fatplanes
