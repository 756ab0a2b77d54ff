#pragma once

// Counter-based random streams. Every variate is a pure function of
// (seed, counters), so sample paths replay exactly and replications can run
// in any order.

#include <cstdint>
#include <random>
#include <string_view>

namespace fidbandit {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// FNV-1a, used to turn stream names into salts.
inline constexpr std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of the named sub-stream `label` / `index` of an experiment seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                           std::uint64_t index = 0) {
  return hash_combine(hash_combine(seed, hash_label(label)), index);
}

/// Uniform variate in [0,1) with 53 random bits.
inline constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline constexpr double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return to_unit(hash_combine(hash_combine(seed, a), b));
}

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return to_unit(rng()); }

}  // namespace fidbandit
