#pragma once

#include <cstdint>
#include <random>

namespace fractality {

// splitmix64 step; used to derive independent seed streams such as
// (seed, pass) and (master seed, l, run) so every run is reproducible
// from one master seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
  return mix64(seed ^ mix64(a));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

// mt19937_64 emits a standard-specified sequence, so modulo-bounded draws are
// reproducible across platforms (uniform_int_distribution is not).
inline std::uint64_t next_below(std::mt19937_64 &gen, std::uint64_t bound) {
  return gen() % bound;
}

}  // namespace fractality
