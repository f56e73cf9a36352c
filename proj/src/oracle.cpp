#include "cakecut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cakecut {

namespace {

std::vector<Rat> grid_points(const CakeInstance& inst, const Rat& resolution) {
  if (resolution <= 0 || resolution > 1) throw CakeError("resolution must lie in (0,1]");
  std::vector<Rat> pts;
  for (Rat x(0); x < 1; x += resolution) pts.push_back(x);
  pts.push_back(Rat(1));
  for (const auto& b : inst.breakpoints()) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

unsigned long count_candidates(std::size_t interior, int n, unsigned long cap) {
  // C(interior, n-1) * n!, saturating at cap+1.
  unsigned long combos = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (combos > cap) return cap + 1;
    combos = combos * static_cast<unsigned long>(interior - static_cast<std::size_t>(i)) /
             static_cast<unsigned long>(i + 1);
  }
  unsigned long total = combos;
  for (int i = 2; i <= n; ++i) {
    if (total > cap / static_cast<unsigned long>(i)) return cap + 1;
    total *= static_cast<unsigned long>(i);
  }
  return total;
}

}  // namespace

OracleResult grid_optimal(const CakeInstance& inst, WelfareKind kind, const Rat& resolution,
                          const Rat& rho, unsigned long budget) {
  int n = inst.agent_count();
  std::size_t nu = static_cast<std::size_t>(n);
  std::vector<Rat> pts = grid_points(inst, resolution);
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] > 0 && pts[i] < 1) interior.push_back(i);
  if (interior.size() + 1 < nu)
    throw CakeError("grid too coarse for this many agents");
  unsigned long required = count_candidates(interior.size(), n, budget);
  if (required > budget)
    throw BudgetExceeded("grid oracle enumeration above budget", required);

  std::vector<std::vector<Rat>> prefix(nu);
  std::vector<std::vector<double>> prefix_d(nu);
  for (std::size_t a = 0; a < nu; ++a) {
    for (const auto& x : pts)
      prefix[a].push_back(inst.eval(static_cast<int>(a), Interval::make(Rat(0), x)));
    for (const auto& v : prefix[a]) prefix_d[a].push_back(v.get_d());
  }
  double rho_d = rho.get_d();

  // Cut combination: ascending interior indices; boundary index list has
  // 0 and last appended. sigma[k] = agent of the k-th piece.
  std::vector<std::size_t> choice(nu > 0 ? nu - 1 : 0);
  std::iota(choice.begin(), choice.end(), 0);
  std::vector<std::size_t> bounds(nu + 1);
  std::vector<int> sigma(nu);

  bool have_best = false;
  Rat best_exact(0);
  double best_score = 0;
  std::vector<std::size_t> best_bounds;
  std::vector<int> best_sigma;
  unsigned long evals = 0;

  auto consider = [&]() {
    bounds[0] = 0;
    for (std::size_t k = 0; k + 1 < nu; ++k) bounds[k + 1] = interior[choice[k]];
    bounds[nu] = pts.size() - 1;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      ++evals;
      if (kind == WelfareKind::rho_mean && rho != 1) {
        double score = 0;
        for (std::size_t k = 0; k < nu; ++k) {
          std::size_t a = static_cast<std::size_t>(sigma[k]);
          double v = prefix_d[a][bounds[k + 1]] - prefix_d[a][bounds[k]];
          if (v > 0) score += std::pow(v, rho_d);
        }
        if (!have_best || score > best_score) {
          have_best = true;
          best_score = score;
          best_bounds = bounds;
          best_sigma = sigma;
        }
      } else {
        Rat score(kind == WelfareKind::nsw ? 1 : 0);
        for (std::size_t k = 0; k < nu; ++k) {
          std::size_t a = static_cast<std::size_t>(sigma[k]);
          Rat v = prefix[a][bounds[k + 1]] - prefix[a][bounds[k]];
          if (kind == WelfareKind::nsw)
            score *= v;
          else
            score += v;
        }
        if (!have_best || score > best_exact) {
          have_best = true;
          best_exact = score;
          best_bounds = bounds;
          best_sigma = sigma;
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  };

  if (nu == 1) {
    consider();
  } else {
    // Lexicographic combinations of interior cut indices.
    bool more = !choice.empty() || true;
    if (choice.empty()) {
      consider();
    } else {
      while (more) {
        consider();
        more = false;
        std::size_t k = choice.size();
        while (k-- > 0) {
          if (choice[k] + (choice.size() - k) < interior.size()) {
            ++choice[k];
            for (std::size_t j = k + 1; j < choice.size(); ++j) choice[j] = choice[j - 1] + 1;
            more = true;
            break;
          }
        }
      }
    }
  }

  OracleResult out;
  out.kind = kind;
  out.evaluations = evals;
  out.allocation.assigned.assign(nu, Interval::empty());
  for (std::size_t k = 0; k < nu; ++k)
    out.allocation.assigned[static_cast<std::size_t>(best_sigma[k])] =
        Interval::make(pts[best_bounds[k]], pts[best_bounds[k + 1]]);
  out.nsw_value = nsw(inst, out.allocation);
  out.sw_value = sw(inst, out.allocation);
  out.rho_value = rho_mean(inst, out.allocation, kind == WelfareKind::rho_mean ? rho : Rat(1));
  return out;
}

Verdict check_ef_nsw_theorem(const CakeInstance& inst, const Allocation& alloc,
                             const OracleResult& oracle) {
  Verdict v;
  EnvyRatio alpha = envy_ratio(inst, alloc);
  if (alpha.infinite) {
    v.applicable = false;
    v.pass = true;
    v.detail = "infinite envy ratio; bound not applicable";
    return v;
  }
  NswValue mine = nsw(inst, alloc);
  v.pass = nsw_power_at_least(mine.product, oracle.nsw_value.product, 2 * alpha.value, mine.n);
  v.detail = "NSW " + mine.exact_string() + " vs oracle " + oracle.nsw_value.exact_string() +
             " / (2*" + rat_to_string(alpha.value) + ")";
  return v;
}

Verdict check_price_of_ef(const CakeInstance& inst, const Allocation& alloc, const Rat& rho,
                          const OracleResult& oracle) {
  Verdict v;
  if (rho <= 0 || rho > 1) throw CakeError("rho must lie in (0,1]");
  EnvyRatio alpha = envy_ratio(inst, alloc);
  if (alpha.infinite) {
    v.applicable = false;
    v.pass = true;
    v.detail = "infinite envy ratio; bound not applicable";
    return v;
  }
  unsigned long p = rho.get_num().get_ui();
  unsigned long q = rho.get_den().get_ui();
  BfI lhs = rho_mean(inst, oracle.allocation, rho).bracket();
  BfI factor = BfI::from_rat(2 * alpha.value) * BfI::from_ul(2).pow(q, p) *
               BfI::from_ul(static_cast<unsigned long>(inst.agent_count())).pow(p, p + q);
  BfI rhs = factor * rho_mean(inst, alloc, rho).bracket();
  v.pass = certainly_leq(lhs, rhs);
  v.detail = "oracle M_rho " + lhs.to_decimal() + " vs bound " + rhs.to_decimal();
  return v;
}

Verdict check_nash_optimal_4ef(const CakeInstance& inst, const OracleResult& oracle,
                               const Rat& slack) {
  Verdict v;
  if (slack < 0) throw CakeError("slack must be nonnegative");
  EnvyRatio alpha = envy_ratio(inst, oracle.allocation);
  if (alpha.infinite) {
    v.pass = false;
    v.detail = "grid Nash optimum has an infinite envy ratio";
    return v;
  }
  v.pass = alpha.value <= 4 + slack;
  v.detail = "envy ratio " + rat_to_string(alpha.value) + " vs 4 + " + rat_to_string(slack) +
             " (approximate check: grid optimum stands in for the Nash optimum)";
  return v;
}

}  // namespace cakecut
