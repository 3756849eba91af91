#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace accc {

// SplitMix64 finalizer. Used to derive independent seeds from (master, tag)
// tuples so that per-round RNG streams stay comparable across strategy
// variants that consume different amounts of randomness per round.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(master ^ 0x6a09e667f3bcc909ULL) + 0x9e3779b97f4a7c15ULL * mix64(a) + mix64(b));
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return std::mt19937_64(derive_seed(master, a, b));
}

// Standard Gumbel(0,1) draw; the argument of the outer log is clamped away
// from zero so the key never becomes NaN.
inline double gumbel(std::mt19937_64& rng) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < 1e-300) u = 1e-300;
  return -std::log(-std::log(u));
}

// Fisher-Yates with an explicit distribution, so shuffles do not depend on
// std::shuffle internals.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> d(0, i - 1);
    std::swap(v[i - 1], v[d(rng)]);
  }
}

}  // namespace accc
