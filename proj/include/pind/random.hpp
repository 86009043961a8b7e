#ifndef PIND_RANDOM_HPP
#define PIND_RANDOM_HPP

#include <cstdint>
#include <random>

namespace pind {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent streams from (seed, index)
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(mix64(seed) + stream));
}

} // namespace pind

#endif
