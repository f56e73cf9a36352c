#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/bigfloat.hpp"
#include "cakecut/model.hpp"

namespace cakecut {

/// Smallest alpha >= 1 with v_a(I_a) >= v_a(I_b)/alpha for all a, b.
/// Infinite when some agent values its own piece at 0 but another's above 0.
struct EnvyRatio {
  bool infinite{false};
  Rat value{1};
};

EnvyRatio envy_ratio(const CakeInstance& inst, const Allocation& alloc);

std::vector<Rat> agent_values(const CakeInstance& inst, const Allocation& alloc);

/// Arithmetic-mean welfare, exact.
Rat sw(const CakeInstance& inst, const Allocation& alloc);

/// Geometric mean of agent values. The n-th power (the plain product) is
/// kept exact so multiplicative bounds reduce to rational comparisons.
struct NswValue {
  Rat product;
  unsigned long n{1};

  BfI bracket() const;
  std::string exact_string() const;
};

NswValue nsw(const CakeInstance& inst, const Allocation& alloc);

/// Hoelder mean ((1/n) sum v^rho)^(1/rho) for rational rho in (0,1].
/// Irrational cases carry a certified 256-bit bracket; an exact rational
/// form is reported when rho has denominator 1 or all values coincide.
struct RhoMeanValue {
  Rat rho;
  std::vector<Rat> values;

  BfI bracket() const;
  std::optional<Rat> exact() const;
  std::string exact_string() const;
};

RhoMeanValue rho_mean(const CakeInstance& inst, const Allocation& alloc, const Rat& rho);

struct WelfareReport {
  std::vector<Rat> values;
  EnvyRatio envy;
  Rat sw_value;
  NswValue nsw_value;
  std::vector<RhoMeanValue> rho_means;
};

WelfareReport welfare_report(const CakeInstance& inst, const Allocation& alloc,
                             const std::vector<Rat>& rhos);

/// Exact strings plus 12-digit decimal renderings.
std::string welfare_report_to_json(const CakeInstance& inst, const WelfareReport& report);

/// Exact test of prod_a >= prod_b / scale^n, the n-th-power form of
/// NSW(A) >= NSW(B)/scale.
bool nsw_power_at_least(const Rat& prod_a, const Rat& prod_b, const Rat& scale,
                        unsigned long n);

}  // namespace cakecut
