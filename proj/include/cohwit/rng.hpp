#pragma once

#include <cstdint>
#include <random>

#include "cohwit/core.hpp"

namespace cohwit {

/// 64-bit seed for every stochastic routine.
struct Seed {
  std::uint64_t value = 0;
};

/// Engine used throughout: the standard 64-bit Mersenne Twister.
using Engine = std::mt19937_64;

/// One SplitMix64 step; used to derive well-mixed child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent, deterministic child seed for worker/item `stream`.
Seed split(Seed parent, std::uint64_t stream);

/// Engine seeded from `seed` (through SplitMix64 so nearby seeds decorrelate).
Engine make_engine(Seed seed);

/// Normalised complex Gaussian vector; Haar-distributed on the unit sphere.
PureState haar_random_pure(std::size_t d, Engine& rng);
PureState haar_random_pure(std::size_t d, Seed seed);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_random_unitary(std::size_t m, Engine& rng);

}  // namespace cohwit
