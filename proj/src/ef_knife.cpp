#include "cakecut/ef_knife.hpp"

#include <algorithm>

#include "json.hpp"

namespace cakecut {

namespace {

nlohmann::json interval_json(const Interval& iv) {
  return {{"left", rat_to_string(iv.left)}, {"right", rat_to_string(iv.right)}};
}

Rat slack(const CakeInstance& inst, const Rat& epsilon) {
  Rat n(inst.agent_count());
  return epsilon / (n * n);
}

void check_preconditions(const CakeInstance& inst, const Rat& epsilon, int min_agents) {
  if (inst.agent_count() < min_agents) throw CakeError("too few agents for this solver");
  if (epsilon <= 0 || epsilon > Rat(1, 3)) throw CakeError("epsilon must lie in (0,1/3]");
  auto problems = inst.validate();
  if (!problems.empty()) throw CakeError("invalid instance: " + problems.front());
  if (!inst.normalized()) throw CakeError("solver requires a normalized instance");
}

}  // namespace

std::string trace_to_jsonl(const std::vector<IterationRecord>& trace) {
  std::string out;
  for (const auto& rec : trace) {
    nlohmann::json j;
    j["iteration"] = rec.iteration;
    j["chosen_gap"] = interval_json(rec.chosen_gap);
    j["contenders"] = nlohmann::json::array();
    for (int b : rec.contenders) j["contenders"].push_back(b + 1);
    j["knife_direction"] = rec.right_knife ? "right" : "left";
    j["selected_agent"] = rec.selected_agent + 1;
    j["new_interval"] = interval_json(rec.new_interval);
    j["relinquished"] = interval_json(rec.relinquished);
    out += j.dump();
    out += '\n';
  }
  return out;
}

KnifeState KnifeState::initial(const CakeInstance& inst, const Rat& epsilon) {
  KnifeState s;
  s.partial = PartialAllocation::empty(inst.agent_count());
  s.gaps = unassigned_gaps(s.partial);
  s.epsilon = epsilon;
  return s;
}

std::optional<std::pair<int, Interval>> find_violation(const CakeInstance& inst,
                                                       const KnifeState& state) {
  Rat tau = slack(inst, state.epsilon);
  for (const auto& gap : state.gaps.gaps) {
    for (int a = 0; a < inst.agent_count(); ++a) {
      Rat own = inst.eval(a, state.partial.assigned[static_cast<std::size_t>(a)]);
      if (own < inst.eval(a, gap) - tau) return std::make_pair(a, gap);
    }
  }
  return std::nullopt;
}

namespace {

struct Contest {
  std::vector<int> contenders;
  int winner{-1};
  Rat winner_cut;
};

Contest run_contest(const CakeInstance& inst, const KnifeState& state, const Interval& gap,
                    bool right_knife) {
  Rat tau = slack(inst, state.epsilon);
  Contest c;
  for (int b = 0; b < inst.agent_count(); ++b) {
    Rat own = inst.eval(b, state.partial.assigned[static_cast<std::size_t>(b)]);
    if (!(own < inst.eval(b, gap) - tau)) continue;
    Rat point = right_knife ? inst.rightmost_cut(b, gap.right, own + tau)
                            : inst.cut(b, gap.left, own + tau);
    bool better = c.winner < 0 ||
                  (right_knife ? point > c.winner_cut : point < c.winner_cut);
    if (better) {
      c.winner = b;
      c.winner_cut = point;
    }
    c.contenders.push_back(b);
  }
  if (c.winner < 0) throw CakeError("knife step called on a non-violating gap");
  return c;
}

void apply_step(const CakeInstance& inst, KnifeState& state, const Interval& gap,
                bool right_knife) {
  Contest c = run_contest(inst, state, gap, right_knife);
  auto& slot = state.partial.assigned[static_cast<std::size_t>(c.winner)];
  IterationRecord rec;
  rec.iteration = ++state.iteration;
  rec.chosen_gap = gap;
  rec.contenders = c.contenders;
  rec.right_knife = right_knife;
  rec.selected_agent = c.winner;
  rec.relinquished = slot;
  slot = right_knife ? Interval::make(c.winner_cut, gap.right)
                     : Interval::make(gap.left, c.winner_cut);
  rec.new_interval = slot;
  state.trace.push_back(std::move(rec));
  state.gaps = unassigned_gaps(state.partial);
}

}  // namespace

void left_knife_step(const CakeInstance& inst, KnifeState& state, const Interval& gap) {
  apply_step(inst, state, gap, false);
}

void right_knife_step(const CakeInstance& inst, KnifeState& state, const Interval& gap) {
  apply_step(inst, state, gap, true);
}

Allocation merge_step(const CakeInstance& inst, const PartialAllocation& partial,
                      const UnassignedSet& gaps) {
  struct Piece {
    Interval extended;
    Interval original;
    int owner;
    bool used{false};
  };
  std::vector<Piece> pieces;
  for (int a = 0; a < partial.size(); ++a) {
    const auto& iv = partial.assigned[static_cast<std::size_t>(a)];
    if (!iv.is_empty()) pieces.push_back({iv, iv, a});
  }
  if (pieces.empty()) throw CakeError("merge on an empty partial allocation");
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.original.left < y.original.left; });

  for (const auto& gap : gaps.gaps) {
    Piece* left = nullptr;
    Piece* right = nullptr;
    for (auto& p : pieces) {
      if (p.original.right == gap.left) left = &p;
      if (p.original.left == gap.right) right = &p;
    }
    Piece* target = (left && !left->used) ? left : (right && !right->used) ? right : left;
    if (!target) target = right;
    if (!target) throw CakeError("gap with no adjacent assigned interval");
    target->used = true;
    if (target == left)
      target->extended.right = std::max(target->extended.right, gap.right);
    else
      target->extended.left = std::min(target->extended.left, gap.left);
  }

  Allocation out;
  out.assigned.assign(partial.assigned.size(), Interval::empty());
  for (const auto& p : pieces) out.assigned[static_cast<std::size_t>(p.owner)] = p.extended;
  auto problems = out.violations();
  if (!problems.empty()) throw CakeError("merge produced an invalid allocation: " + problems.front());
  (void)inst;
  return out;
}

unsigned long knife_iteration_budget(int n, const Rat& epsilon) {
  Rat bound = Rat(n) * Rat(n) * Rat(n) / epsilon;
  return rat_ceil_ul(bound);
}

namespace {

KnifeResult finish(const CakeInstance& inst, KnifeState&& state) {
  KnifeResult r;
  r.allocation = merge_step(inst, state.partial, state.gaps);
  r.terminal_partial = std::move(state.partial);
  r.terminal_gaps = std::move(state.gaps);
  r.trace = std::move(state.trace);
  return r;
}

// Exact envy-free division for two agents: the first agent halves the cake
// by its own measure, the second takes its preferred side.
KnifeResult run_cut_and_choose(const CakeInstance& inst) {
  Rat mid = inst.cut(0, Rat(0), Rat(1, 2));
  Interval left = Interval::make(Rat(0), mid);
  Interval right = Interval::make(mid, Rat(1));
  bool chooser_takes_left = inst.eval(1, left) >= inst.eval(1, right);
  KnifeResult r;
  r.allocation.assigned = chooser_takes_left ? std::vector<Interval>{right, left}
                                             : std::vector<Interval>{left, right};
  r.terminal_partial.assigned = r.allocation.assigned;
  r.terminal_gaps = unassigned_gaps(r.terminal_partial);
  return r;
}

}  // namespace

KnifeResult alg_three_ef(const CakeInstance& inst, const Rat& epsilon, bool cut_and_choose) {
  check_preconditions(inst, epsilon, 1);
  if (cut_and_choose && inst.agent_count() == 2) return run_cut_and_choose(inst);
  KnifeState state = KnifeState::initial(inst, epsilon);
  unsigned long budget = knife_iteration_budget(inst.agent_count(), epsilon);
  while (auto violation = find_violation(inst, state)) {
    if (state.iteration >= budget)
      throw CakeError("iteration budget exceeded; the loop should have terminated");
    left_knife_step(inst, state, violation->second);
  }
  return finish(inst, std::move(state));
}

KnifeResult alg_two_ef(const CakeInstance& inst, const Rat& epsilon, bool cut_and_choose) {
  check_preconditions(inst, epsilon, 2);
  if (cut_and_choose && inst.agent_count() == 2) return run_cut_and_choose(inst);
  KnifeState state = KnifeState::initial(inst, epsilon);
  std::size_t n = static_cast<std::size_t>(inst.agent_count());
  unsigned long budget = knife_iteration_budget(inst.agent_count(), epsilon);
  while (auto violation = find_violation(inst, state)) {
    if (state.iteration >= budget)
      throw CakeError("iteration budget exceeded; the loop should have terminated");
    KnifeState tentative = state;
    left_knife_step(inst, tentative, violation->second);
    if (tentative.gaps.gaps.size() <= n) {
      state = std::move(tentative);
      continue;
    }
    right_knife_step(inst, state, violation->second);
    if (state.gaps.gaps.size() > n)
      throw CakeError("both knife directions exceed the gap limit");
  }
  return finish(inst, std::move(state));
}

bool partial_pairwise_bound(const CakeInstance& inst, const PartialAllocation& partial,
                            const Rat& epsilon) {
  Rat tau = slack(inst, epsilon);
  for (int a = 0; a < inst.agent_count(); ++a) {
    Rat own = inst.eval(a, partial.assigned[static_cast<std::size_t>(a)]);
    for (int b = 0; b < inst.agent_count(); ++b)
      if (own < inst.eval(a, partial.assigned[static_cast<std::size_t>(b)]) - tau)
        return false;
  }
  return true;
}

bool partial_terminal_bound(const CakeInstance& inst, const PartialAllocation& partial,
                            const UnassignedSet& gaps, const Rat& epsilon) {
  if (!partial_pairwise_bound(inst, partial, epsilon)) return false;
  Rat tau = slack(inst, epsilon);
  for (int a = 0; a < inst.agent_count(); ++a) {
    Rat own = inst.eval(a, partial.assigned[static_cast<std::size_t>(a)]);
    for (const auto& gap : gaps.gaps)
      if (own < inst.eval(a, gap) - tau) return false;
  }
  return true;
}

}  // namespace cakecut
