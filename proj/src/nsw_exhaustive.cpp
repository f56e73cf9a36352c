#include "cakecut/nsw_exhaustive.hpp"

#include <algorithm>
#include <numeric>

namespace cakecut {

ValueGrid value_grid(int n, const Rat& alpha) {
  if (n < 1) throw CakeError("need at least one agent");
  if (alpha <= 1) throw CakeError("alpha must exceed 1");
  ValueGrid g;
  Rat level = 1 / rat_pow(Rat(n), static_cast<unsigned long>(n));
  while (level < 1) {
    g.levels.push_back(level);
    level *= alpha;
  }
  g.levels.push_back(Rat(1));
  return g;
}

std::optional<PartialAllocation> realize_value_vector(const CakeInstance& inst,
                                                      const std::vector<int>& sigma,
                                                      const std::vector<Rat>& targets) {
  std::size_t n = static_cast<std::size_t>(inst.agent_count());
  if (sigma.size() != n || targets.size() != n)
    throw CakeError("permutation/target size mismatch");
  PartialAllocation out = PartialAllocation::empty(inst.agent_count());
  Rat pos(0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    int a = sigma[k];
    const Rat& t = targets[static_cast<std::size_t>(a)];
    if (t < 0) throw CakeError("negative target");
    Rat c;
    try {
      c = inst.cut(a, pos, t);
    } catch (const InsufficientValue&) {
      return std::nullopt;
    }
    out.assigned[static_cast<std::size_t>(a)] = Interval::make(pos, c);
    pos = c;
  }
  int last = sigma[n - 1];
  const Rat& t = targets[static_cast<std::size_t>(last)];
  Interval remainder = Interval::make(pos, Rat(1));
  if (inst.eval(last, remainder) < t) return std::nullopt;
  if (t > 0) out.assigned[static_cast<std::size_t>(last)] = remainder;
  return out;
}

ExhaustiveResult exhaustive_nsw(const CakeInstance& inst, const Rat& alpha,
                                unsigned long budget) {
  if (!inst.normalized()) throw CakeError("exhaustive search requires a normalized instance");
  int n = inst.agent_count();
  std::size_t nu = static_cast<std::size_t>(n);
  ValueGrid grid = value_grid(n, alpha);
  std::size_t g = grid.levels.size();

  unsigned long total = 1;
  unsigned long factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= static_cast<unsigned long>(i);
  for (int i = 0; i < n; ++i) {
    if (total > budget / g + 1) {
      total = budget + 1;
      break;
    }
    total *= static_cast<unsigned long>(g);
  }
  if (total > budget || total * factorial > budget)
    throw BudgetExceeded("exhaustive enumeration above budget",
                         total > budget ? total : total * factorial);

  ExhaustiveResult best;
  Rat best_product(-1);
  std::vector<std::size_t> idx(nu, 0);
  std::vector<Rat> targets(nu);
  ExhaustiveResult result;
  bool more = true;
  while (more) {
    for (std::size_t a = 0; a < nu; ++a) targets[a] = grid.levels[idx[a]];
    std::vector<int> sigma(nu);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      ++result.attempts;
      auto partial = realize_value_vector(inst, sigma, targets);
      if (partial) {
        Allocation alloc = complete_allocation(*partial);
        NswValue value = nsw(inst, alloc);
        if (value.product > best_product) {
          best_product = value.product;
          best.allocation = std::move(alloc);
          best.nsw_value = std::move(value);
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    // Advance the target vector: first agent most significant.
    more = false;
    for (std::size_t a = nu; a-- > 0;) {
      if (++idx[a] < g) {
        more = true;
        break;
      }
      idx[a] = 0;
    }
  }
  if (best_product < 0) throw CakeError("no feasible realization found");
  best.attempts = result.attempts;
  return best;
}

}  // namespace cakecut
