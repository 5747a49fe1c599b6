#pragma once

#include <cstdint>
#include <random>

#include "green/types.hpp"

namespace green {

using Rng = std::mt19937_64;

// splitmix64 mix of (seed, stream); used to give every restart / trial /
// sampling task its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

double uniform01(Rng& rng);
// Standard complex Gaussian (E|z|^2 = 1).
Complex complex_normal(Rng& rng);
// Uniform on the disc |z| < radius.
Complex uniform_in_disc(Rng& rng, double radius = 1.0);
// Uniform on the unit sphere of C^n.
Point unit_sphere_point(Rng& rng, std::size_t n);

}  // namespace green
