#include "green/rng.hpp"

#include <cmath>
#include <numbers>

namespace green {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
  // 53 random bits -> [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex complex_normal(Rng& rng) {
  // Box-Muller, written out so that streams do not depend on the
  // standard library's distribution implementation.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

Complex uniform_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  const double th = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(r, th);
}

Point unit_sphere_point(Rng& rng, std::size_t n) {
  Point p(n);
  double s = 0.0;
  do {
    for (auto& c : p) c = complex_normal(rng);
    s = norm(p);
  } while (s == 0.0);
  for (auto& c : p) c /= s;
  return p;
}

}  // namespace green
