#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/model.hpp"
#include "cakecut/welfare.hpp"

namespace cakecut {

/// Geometric target-value grid {alpha^i / n^n} capped at 1, with 1 included.
struct ValueGrid {
  std::vector<Rat> levels;
};

ValueGrid value_grid(int n, const Rat& alpha);

/// Left-to-right greedy realization of per-agent target values in the order
/// sigma. Agents before the last get exactly their target; the last agent
/// takes the whole remainder (or nothing when its target is 0) and the
/// attempt fails when the remainder falls short.
std::optional<PartialAllocation> realize_value_vector(const CakeInstance& inst,
                                                      const std::vector<int>& sigma,
                                                      const std::vector<Rat>& targets);

struct ExhaustiveResult {
  Allocation allocation;
  NswValue nsw_value;
  unsigned long attempts{0};
};

/// Enumerates every target vector over the grid (lexicographic, first agent
/// most significant) and every agent order (lexicographic permutations),
/// keeping the first feasible realization of maximum exact NSW. Guarantees
/// a factor-alpha approximation of the optimum.
ExhaustiveResult exhaustive_nsw(const CakeInstance& inst, const Rat& alpha,
                                unsigned long budget = 2000000);

}  // namespace cakecut
