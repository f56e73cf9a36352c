#pragma once

#include <string>

#include "cakecut/allocation.hpp"
#include "cakecut/model.hpp"
#include "cakecut/welfare.hpp"

namespace cakecut {

enum class WelfareKind { nsw, sw, rho_mean };

struct OracleResult {
  Allocation allocation;
  WelfareKind kind{WelfareKind::nsw};
  NswValue nsw_value;
  Rat sw_value{0};
  RhoMeanValue rho_value;
  unsigned long evaluations{0};
};

/// Exhaustive maximum over allocations whose n-1 distinct cuts lie on the
/// grid of resolution multiples united with all density breakpoints,
/// enumerated across agent permutations. The result is a certified LOWER
/// bound on the true optimum and is only ever used on that side of an
/// inequality. NSW and SW maximize exactly; rho-mean steers by double
/// scores and re-certifies the winner with exact values.
OracleResult grid_optimal(const CakeInstance& inst, WelfareKind kind, const Rat& resolution,
                          const Rat& rho = Rat(1), unsigned long budget = 20000000);

struct Verdict {
  bool pass{false};
  bool applicable{true};
  std::string detail;
};

/// NSW(alloc) >= oracle NSW / (2 * envy_ratio(alloc)), exact n-th powers.
/// Not applicable when the envy ratio is infinite.
Verdict check_ef_nsw_theorem(const CakeInstance& inst, const Allocation& alloc,
                             const OracleResult& oracle);

/// oracle M_rho <= 2 * envy_ratio * 2^(1/rho) * n^(rho/(rho+1)) * M_rho(alloc),
/// certified through directed-rounding brackets.
Verdict check_price_of_ef(const CakeInstance& inst, const Allocation& alloc, const Rat& rho,
                          const OracleResult& oracle);

/// envy_ratio(oracle NSW allocation) <= 4 + slack. Approximate by design:
/// the grid optimum only approximates the true Nash optimum, hence the
/// documented slack (default 1/4 at resolution 1/64).
Verdict check_nash_optimal_4ef(const CakeInstance& inst, const OracleResult& oracle,
                               const Rat& slack);

}  // namespace cakecut
