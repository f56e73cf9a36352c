#pragma once

#include <cstdint>

#include "cakecut/jisp.hpp"
#include "cakecut/model.hpp"

namespace cakecut {

/// splitmix64; tiny, seedable, stable across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

/// Normalized instance with breakpoints on the 1/64 grid and densities drawn
/// as small integers, then scaled so every agent totals exactly 1.
CakeInstance random_instance(int agents, int max_pieces, std::uint64_t seed);

/// Small JISP instance for oracle cross-checks: at most `max_candidates`
/// candidates in total, weights small rationals.
JispInstance random_jisp(int jobs, int points, int max_candidates, std::uint64_t seed);

}  // namespace cakecut
