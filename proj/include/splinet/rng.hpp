#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace splinet {

// Seeded draws built directly on mt19937_64 output so that results are
// identical across standard libraries (std::uniform_real_distribution is
// implementation-defined).

inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(gen);
}

inline double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::exp(uniform_real(gen, std::log(lo), std::log(hi)));
}

// inclusive on both ends
inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen() % span);
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// splitmix64 mix of a base seed with a stream index, for independent
// per-run generators
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace splinet
