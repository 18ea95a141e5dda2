#pragma once

#include <cstdint>
#include <random>

namespace softttl {

// splitmix64: used to derive independent per-worker seeds from a user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x632be59bd9b4e019ULL * (index + 1));
}

// Uniform double in [0, 1) with 53 random bits. Avoids the
// implementation-defined behaviour of std::uniform_real_distribution so
// that traces are reproducible across standard libraries.
inline double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace softttl
