#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace binpr {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

/// Order-sensitive hash of a seed and any number of stream labels.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> labels) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t label : labels) h = splitmix64(h ^ splitmix64(label));
  return h;
}

inline std::uint64_t seed_label(double v) { return std::bit_cast<std::uint64_t>(v); }

} // namespace binpr
