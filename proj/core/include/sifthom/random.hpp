#ifndef SIFTHOM_RANDOM_HPP_
#define SIFTHOM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace sifthom {

// splitmix64 step, used to derive independent seeds for sub-streams so that
// per-run and per-noise-type draws stay decoupled from each other.
inline std::uint64_t split_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  return split_seed(split_seed(seed) ^ (0x632be59bd9b4e019ULL * (stream + 1)));
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b) {
  return split_seed(split_seed(seed, a), b);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace sifthom

#endif  // SIFTHOM_RANDOM_HPP_
