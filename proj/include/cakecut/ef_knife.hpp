#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/model.hpp"

namespace cakecut {

struct IterationRecord {
  unsigned long iteration{0};
  Interval chosen_gap;
  std::vector<int> contenders;  // ascending agent indices
  bool right_knife{false};
  int selected_agent{-1};
  Interval new_interval;
  Interval relinquished;
};

/// One IterationRecord per line; agent indices are 1-based in the output.
std::string trace_to_jsonl(const std::vector<IterationRecord>& trace);

struct KnifeState {
  PartialAllocation partial;
  UnassignedSet gaps;
  Rat epsilon;
  unsigned long iteration{0};
  std::vector<IterationRecord> trace;

  static KnifeState initial(const CakeInstance& inst, const Rat& epsilon);
};

/// First (gap, agent) pair, scanning gaps left to right and agents in index
/// order, with v_a(P_a) < v_a(gap) - eps/n^2 strictly; nullopt at termination.
std::optional<std::pair<int, Interval>> find_violation(const CakeInstance& inst,
                                                       const KnifeState& state);

/// Assigns the shortest value-(own + eps/n^2) prefix of the gap among all
/// agents that prefer the gap; the winner relinquishes its old interval.
void left_knife_step(const CakeInstance& inst, KnifeState& state, const Interval& gap);

/// Mirror image: shortest suffix, winner is the agent whose cut sits
/// furthest right.
void right_knife_step(const CakeInstance& inst, KnifeState& state, const Interval& gap);

/// Absorbs each gap into an adjacent assigned interval: the left neighbor if
/// still unused, else the right neighbor if unused, else the left neighbor
/// again. Injective (one gap per agent) whenever #gaps <= #nonempty pieces.
Allocation merge_step(const CakeInstance& inst, const PartialAllocation& partial,
                      const UnassignedSet& gaps);

struct KnifeResult {
  Allocation allocation;
  PartialAllocation terminal_partial;
  UnassignedSet terminal_gaps;
  std::vector<IterationRecord> trace;
};

/// Moving-knife solver with envy_ratio <= 3 + 9*eps/n. Requires a normalized
/// instance and rational eps in (0,1/3].
KnifeResult alg_three_ef(const CakeInstance& inst, const Rat& epsilon,
                         bool cut_and_choose = false);

/// Variant keeping the gap count at most n: each left step is applied
/// tentatively and rolled back in favor of a right step if it would push the
/// gap count over n. envy_ratio <= 2 + 9*eps/n. Requires n >= 2.
KnifeResult alg_two_ef(const CakeInstance& inst, const Rat& epsilon,
                       bool cut_and_choose = false);

/// v_a(P_a) >= v_a(P_b) - eps/n^2 for all agents a, b (exact).
bool partial_pairwise_bound(const CakeInstance& inst, const PartialAllocation& partial,
                            const Rat& epsilon);

/// The same slack bound against every assigned interval and every gap.
bool partial_terminal_bound(const CakeInstance& inst, const PartialAllocation& partial,
                            const UnassignedSet& gaps, const Rat& epsilon);

/// Iteration budget n^3/eps, rounded up.
unsigned long knife_iteration_budget(int n, const Rat& epsilon);

}  // namespace cakecut
