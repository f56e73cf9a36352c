#include "cakecut/jisp.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace cakecut {

Rat cut_set_cell_bound(int n, const Rat& rho, const Rat& eps) {
  if (rho <= 0 || rho > 1) throw CakeError("rho must lie in (0,1]");
  if (eps <= 0 || eps > 1) throw CakeError("eps must lie in (0,1]");
  Rat base = eps / (Rat(n) * Rat(n));
  unsigned long p = rho.get_num().get_ui();
  unsigned long q = rho.get_den().get_ui();
  Rat delta;
  if (p == 1) {
    delta = rat_pow(base, q);
  } else {
    // Irrational delta: round down to a rational within relative 2^-64.
    Bf x = Bf::from_rat(base, MPFR_RNDD);
    mpfr_rootn_ui(x.get(), x.get(), p, MPFR_RNDD);
    mpfr_pow_ui(x.get(), x.get(), q, MPFR_RNDD);
    mpfr_mul_2ui(x.get(), x.get(), 64, MPFR_RNDD);
    mpz_class scaled;
    mpfr_get_z(scaled.get_mpz_t(), x.get(), MPFR_RNDD);
    delta = Rat(scaled) / rat_pow(Rat(2), 64);
    if (delta <= 0) throw CakeError("delta underflow; eps too small for this rho");
  }
  return delta * eps / (2 * Rat(n));
}

CutSet build_cut_set(const CakeInstance& inst, const Rat& rho, const Rat& eps,
                     std::size_t point_budget) {
  Rat bound = cut_set_cell_bound(inst.agent_count(), rho, eps);
  CutSet cs;
  cs.points.push_back(Rat(0));
  Rat x(0);
  while (x < 1) {
    Rat next(1);
    for (int a = 0; a < inst.agent_count(); ++a) {
      try {
        Rat y = inst.cut(a, x, bound);
        if (y < next) next = y;
      } catch (const InsufficientValue&) {
        // This agent has under a cell's worth left; no constraint from it.
      }
    }
    x = next;
    cs.points.push_back(x);
    if (cs.points.size() > point_budget) {
      Rat estimate = Rat(inst.agent_count()) / bound + 2;
      throw BudgetExceeded("cut set exceeds the point budget", rat_ceil_ul(estimate));
    }
  }
  return cs;
}

std::vector<std::string> jisp_violations(const JispInstance& jisp) {
  std::vector<std::string> out;
  if (jisp.points < 2) out.push_back("instance needs at least two points");
  for (std::size_t j = 0; j < jisp.jobs.size(); ++j)
    for (const auto& c : jisp.jobs[j]) {
      if (c.l < 0 || c.r >= jisp.points || c.l >= c.r)
        out.push_back("job " + std::to_string(j + 1) + ": bad candidate indices");
      if (c.w < 0) out.push_back("job " + std::to_string(j + 1) + ": negative weight");
    }
  return out;
}

JispInstance jisp_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("points") || !j["points"].is_number_integer() ||
      !j.contains("jobs") || !j["jobs"].is_array())
    throw ParseError("jisp instance needs 'points' and a 'jobs' array");
  JispInstance out;
  out.points = j["points"].get<int>();
  for (const auto& jj : j["jobs"]) {
    std::vector<JispCandidate> cands;
    for (const auto& jc : jj)
      cands.push_back({jc.at("l").get<int>(), jc.at("r").get<int>(),
                       rat_from_string(jc.at("w").get<std::string>())});
    out.jobs.push_back(std::move(cands));
  }
  auto problems = jisp_violations(out);
  if (!problems.empty()) throw ParseError("invalid jisp instance: " + problems.front());
  return out;
}

std::string jisp_to_json(const JispInstance& jisp) {
  nlohmann::json j;
  j["points"] = jisp.points;
  j["jobs"] = nlohmann::json::array();
  for (const auto& job : jisp.jobs) {
    nlohmann::json jj = nlohmann::json::array();
    for (const auto& c : job)
      jj.push_back({{"l", c.l}, {"r", c.r}, {"w", rat_to_string(c.w)}});
    j["jobs"].push_back(std::move(jj));
  }
  return j.dump(2) + "\n";
}

Rat solution_weight(const JispInstance& jisp, const JispSolution& sol) {
  Rat total(0);
  for (std::size_t j = 0; j < jisp.jobs.size(); ++j) {
    if (j >= sol.selected.size() || !sol.selected[j]) continue;
    auto [l, r] = *sol.selected[j];
    // A selection names an index pair; with duplicate candidates the best
    // matching weight is the one the pair is worth.
    const Rat* best = nullptr;
    for (const auto& c : jisp.jobs[j])
      if (c.l == l && c.r == r && (!best || c.w > *best)) best = &c.w;
    if (!best) throw CakeError("solution selects an unknown candidate");
    total += *best;
  }
  return total;
}

std::vector<std::string> solution_violations(const JispInstance& jisp,
                                             const JispSolution& sol) {
  std::vector<std::string> out;
  if (sol.selected.size() != jisp.jobs.size())
    out.push_back("solution size does not match job count");
  std::vector<std::pair<int, int>> taken;
  for (const auto& s : sol.selected)
    if (s) taken.push_back(*s);
  std::sort(taken.begin(), taken.end());
  for (std::size_t i = 1; i < taken.size(); ++i)
    if (taken[i - 1].second > taken[i].first) out.push_back("selected intervals overlap");
  return out;
}

namespace {

/// Shared local-ratio bookkeeping. Selections arrive with strictly
/// increasing right endpoints (all same-endpoint candidates conflict, so
/// after one selection the rest go non-positive), which keeps the delta
/// prefix sums sorted and residual lookups logarithmic.
template <typename W>
class LocalRatioEngine {
 public:
  explicit LocalRatioEngine(int num_jobs)
      : job_rs_(static_cast<std::size_t>(num_jobs)),
        job_cum_(static_cast<std::size_t>(num_jobs)) {}

  // Original weight minus every already-selected conflicting delta:
  // overlapping selections (right endpoint > l) plus same-job selections
  // that do not overlap (right endpoint <= l).
  W residual(int job, int l, const W& w) const {
    W out = w - (total_ - prefix(rs_, cum_, l));
    out = out - prefix(job_rs_[static_cast<std::size_t>(job)],
                       job_cum_[static_cast<std::size_t>(job)], l);
    return out;
  }

  void select(int job, int l, int r, const W& delta) {
    rs_.push_back(r);
    total_ = total_ + delta;
    cum_.push_back(total_);
    auto& jr = job_rs_[static_cast<std::size_t>(job)];
    auto& jc = job_cum_[static_cast<std::size_t>(job)];
    jr.push_back(r);
    jc.push_back((jc.empty() ? W(0) : jc.back()) + delta);
    chosen_.push_back({job, l, r});
  }

  /// Reverse unwind: keep a selection when its job is still free and its
  /// interval avoids everything kept so far.
  JispSolution unwind(std::size_t num_jobs) const {
    JispSolution sol;
    sol.selected.assign(num_jobs, std::nullopt);
    std::vector<std::pair<int, int>> kept;
    for (auto it = chosen_.rbegin(); it != chosen_.rend(); ++it) {
      if (sol.selected[static_cast<std::size_t>(it->job)]) continue;
      bool clash = false;
      for (const auto& [kl, kr] : kept)
        if (it->l < kr && kl < it->r) { clash = true; break; }
      if (clash) continue;
      sol.selected[static_cast<std::size_t>(it->job)] = std::make_pair(it->l, it->r);
      kept.emplace_back(it->l, it->r);
    }
    return sol;
  }

 private:
  struct Sel {
    int job, l, r;
  };

  static W prefix(const std::vector<int>& rs, const std::vector<W>& cum, int l) {
    auto it = std::upper_bound(rs.begin(), rs.end(), l);
    if (it == rs.begin()) return W(0);
    return cum[static_cast<std::size_t>(it - rs.begin()) - 1];
  }

  std::vector<Sel> chosen_;
  std::vector<int> rs_;
  std::vector<W> cum_;
  W total_{0};
  std::vector<std::vector<int>> job_rs_;
  std::vector<std::vector<W>> job_cum_;
};

/// Sweep right endpoints in ascending order; at each, pick the candidate
/// with the largest positive residual (ties: lower job, then smaller left
/// endpoint). CandidateFn(job, l, r) yields the original weight.
template <typename W, typename CandidateFn>
JispSolution local_ratio_sweep(std::size_t num_jobs, int num_points, CandidateFn weight_of) {
  LocalRatioEngine<W> eng(static_cast<int>(num_jobs));
  for (int r = 1; r < num_points; ++r) {
    int best_job = -1, best_l = -1;
    W best_res(0);
    for (std::size_t job = 0; job < num_jobs; ++job) {
      for (int l = 0; l < r; ++l) {
        W w = weight_of(static_cast<int>(job), l, r);
        if (!(w > W(0))) continue;
        W res = eng.residual(static_cast<int>(job), l, w);
        if (res > best_res) {
          best_res = res;
          best_job = static_cast<int>(job);
          best_l = l;
        }
      }
    }
    if (best_job >= 0) eng.select(best_job, best_l, r, best_res);
  }
  return eng.unwind(num_jobs);
}

}  // namespace

JispSolution local_ratio_solve(const JispInstance& jisp) {
  // Dense weight lookup; absent candidates weigh zero and are skipped.
  int pts = jisp.points;
  std::size_t jobs = jisp.jobs.size();
  std::vector<Rat> w(jobs * static_cast<std::size_t>(pts) * static_cast<std::size_t>(pts),
                     Rat(0));
  auto at = [&](int job, int l, int r) -> Rat& {
    return w[(static_cast<std::size_t>(job) * static_cast<std::size_t>(pts) +
              static_cast<std::size_t>(l)) *
                 static_cast<std::size_t>(pts) +
             static_cast<std::size_t>(r)];
  };
  for (std::size_t j = 0; j < jobs; ++j)
    for (const auto& c : jisp.jobs[j])
      if (c.w > at(static_cast<int>(j), c.l, c.r)) at(static_cast<int>(j), c.l, c.r) = c.w;
  return local_ratio_sweep<Rat>(jobs, pts,
                                [&](int job, int l, int r) { return at(job, l, r); });
}

namespace {

std::vector<std::vector<JispCandidate>> prune_dominated(const JispInstance& jisp) {
  std::vector<std::vector<JispCandidate>> out;
  for (const auto& job : jisp.jobs) {
    std::vector<JispCandidate> kept;
    for (std::size_t i = 0; i < job.size(); ++i) {
      bool dominated = false;
      for (std::size_t k = 0; k < job.size() && !dominated; ++k) {
        if (k == i) continue;
        const auto& a = job[i];
        const auto& b = job[k];
        // b nested in a with at least a's weight makes a redundant; among
        // exact duplicates keep the earliest.
        if (b.l >= a.l && b.r <= a.r && b.w >= a.w &&
            (b.l != a.l || b.r != a.r || b.w != a.w || k < i))
          dominated = true;
      }
      if (!dominated) kept.push_back(job[i]);
    }
    out.push_back(std::move(kept));
  }
  return out;
}

void brute_force_rec(const std::vector<std::vector<JispCandidate>>& jobs, std::size_t j,
                     std::vector<std::optional<std::pair<int, int>>>& current,
                     std::vector<std::pair<int, int>>& taken, Rat& acc, Rat& best,
                     JispSolution& best_sol) {
  if (j == jobs.size()) {
    if (acc > best) {
      best = acc;
      best_sol.selected = current;
    }
    return;
  }
  current[j] = std::nullopt;
  brute_force_rec(jobs, j + 1, current, taken, acc, best, best_sol);
  for (const auto& c : jobs[j]) {
    bool clash = false;
    for (const auto& [tl, tr] : taken)
      if (c.l < tr && tl < c.r) { clash = true; break; }
    if (clash) continue;
    current[j] = std::make_pair(c.l, c.r);
    taken.emplace_back(c.l, c.r);
    acc += c.w;
    brute_force_rec(jobs, j + 1, current, taken, acc, best, best_sol);
    acc -= c.w;
    taken.pop_back();
    current[j] = std::nullopt;
  }
}

}  // namespace

JispSolution brute_force_jisp(const JispInstance& jisp, std::size_t cap) {
  auto jobs = prune_dominated(jisp);
  std::size_t total = 0;
  for (const auto& job : jobs) total += job.size();
  if (total > cap)
    throw BudgetExceeded("jisp brute force above the candidate cap",
                         static_cast<unsigned long>(total));
  JispSolution best_sol;
  best_sol.selected.assign(jisp.jobs.size(), std::nullopt);
  std::vector<std::optional<std::pair<int, int>>> current(jisp.jobs.size());
  std::vector<std::pair<int, int>> taken;
  Rat acc(0), best(-1);
  brute_force_rec(jobs, 0, current, taken, acc, best, best_sol);
  return best_sol;
}

namespace {

std::vector<std::vector<Rat>> point_prefixes(const CakeInstance& inst, const CutSet& cuts) {
  std::vector<std::vector<Rat>> prefix(static_cast<std::size_t>(inst.agent_count()));
  for (int a = 0; a < inst.agent_count(); ++a) {
    auto& row = prefix[static_cast<std::size_t>(a)];
    row.reserve(cuts.points.size());
    for (const auto& x : cuts.points)
      row.push_back(inst.eval(a, Interval::make(Rat(0), x)));
  }
  return prefix;
}

}  // namespace

JispInstance discretize(const CakeInstance& inst, const CutSet& cuts) {
  auto prefix = point_prefixes(inst, cuts);
  JispInstance out;
  out.points = static_cast<int>(cuts.points.size());
  for (int a = 0; a < inst.agent_count(); ++a) {
    std::vector<JispCandidate> cands;
    for (int l = 0; l + 1 < out.points; ++l)
      for (int r = l + 1; r < out.points; ++r)
        cands.push_back({l, r,
                         prefix[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] -
                             prefix[static_cast<std::size_t>(a)][static_cast<std::size_t>(l)]});
    out.jobs.push_back(std::move(cands));
  }
  return out;
}

PartialAllocation solution_to_partial(const CakeInstance& inst, const CutSet& cuts,
                                      const JispSolution& sol) {
  PartialAllocation out = PartialAllocation::empty(inst.agent_count());
  for (std::size_t a = 0; a < sol.selected.size(); ++a) {
    if (!sol.selected[a]) continue;
    auto [l, r] = *sol.selected[a];
    out.assigned[a] = Interval::make(cuts.points[static_cast<std::size_t>(l)],
                                     cuts.points[static_cast<std::size_t>(r)]);
  }
  return out;
}

RhoPipelineResult maximize_rho_mean(const CakeInstance& inst, const Rat& rho,
                                    const Rat& eps, std::size_t point_budget) {
  if (eps <= 0 || eps >= 1) throw CakeError("eps must lie in (0,1)");
  if (!inst.normalized())
    throw CakeError("rho-mean pipeline requires a normalized instance");
  RhoPipelineResult out;
  out.cuts = build_cut_set(inst, rho, eps, point_budget);
  auto prefix = point_prefixes(inst, out.cuts);
  std::size_t jobs = static_cast<std::size_t>(inst.agent_count());
  int pts = static_cast<int>(out.cuts.points.size());
  if (rho == 1) {
    out.solution = local_ratio_sweep<Rat>(jobs, pts, [&](int job, int l, int r) {
      return prefix[static_cast<std::size_t>(job)][static_cast<std::size_t>(r)] -
             prefix[static_cast<std::size_t>(job)][static_cast<std::size_t>(l)];
    });
  } else {
    // Double weights are plenty for steering the 2-approximation; all
    // reported welfare figures are recomputed from exact values below.
    double rho_d = rho.get_d();
    std::vector<std::vector<double>> pd(jobs);
    for (std::size_t a = 0; a < jobs; ++a) {
      pd[a].reserve(prefix[a].size());
      for (const auto& v : prefix[a]) pd[a].push_back(v.get_d());
    }
    bool half = rho == Rat(1, 2);
    out.solution = local_ratio_sweep<double>(jobs, pts, [&](int job, int l, int r) {
      double v = pd[static_cast<std::size_t>(job)][static_cast<std::size_t>(r)] -
                 pd[static_cast<std::size_t>(job)][static_cast<std::size_t>(l)];
      if (v <= 0) return 0.0;
      return half ? std::sqrt(v) : std::pow(v, rho_d);
    });
  }
  out.partial = solution_to_partial(inst, out.cuts, out.solution);
  out.allocation = complete_allocation(out.partial);
  out.report = welfare_report(inst, out.allocation, {rho});
  return out;
}

}  // namespace cakecut
