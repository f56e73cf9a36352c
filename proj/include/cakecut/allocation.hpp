#pragma once

#include <string>
#include <vector>

#include "cakecut/model.hpp"

namespace cakecut {

/// Agent-indexed pairwise interior-disjoint intervals, union inside [0,1].
struct PartialAllocation {
  std::vector<Interval> assigned;

  static PartialAllocation empty(int n) {
    PartialAllocation p;
    p.assigned.assign(static_cast<std::size_t>(n), Interval::empty());
    return p;
  }

  int size() const { return static_cast<int>(assigned.size()); }

  /// Diagnostics; empty when the intervals are pairwise interior-disjoint
  /// and contained in [0,1].
  std::vector<std::string> violations() const;
};

/// A full allocation: pairwise interior-disjoint intervals covering [0,1].
struct Allocation {
  std::vector<Interval> assigned;

  int size() const { return static_cast<int>(assigned.size()); }

  std::vector<std::string> violations() const;
};

/// Maximal unassigned gaps, left to right.
struct UnassignedSet {
  std::vector<Interval> gaps;
};

UnassignedSet unassigned_gaps(const PartialAllocation& partial);

/// Extends a partial allocation to cover the cake: each gap merges into the
/// assigned interval adjacent on its left, or on its right if no left
/// neighbor exists. No agent's value can decrease.
Allocation complete_allocation(const PartialAllocation& partial);

// Allocation JSON format:
//   {"pieces": [{"agent": "a1", "left": "0", "right": "1/2"}, ...]}
// Agents with empty intervals are omitted.
Allocation allocation_from_json(const CakeInstance& inst, const std::string& text);
std::string allocation_to_json(const CakeInstance& inst, const Allocation& alloc);

}  // namespace cakecut
