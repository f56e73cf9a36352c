#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cakecut/jisp.hpp"
#include "cakecut/random_gen.hpp"
#include "cakecut/welfare.hpp"

using namespace cakecut;

namespace {

CakeInstance uniform(int n) {
  std::vector<Agent> agents;
  for (int a = 0; a < n; ++a)
    agents.push_back({"a" + std::to_string(a + 1),
                      PiecewiseDensity({{Rat(0), Rat(1), Rat(1)}})});
  return CakeInstance(std::move(agents), true);
}

CakeInstance disjoint_support() {
  return CakeInstance(
      {{"a1", PiecewiseDensity({{Rat(0), Rat(1, 2), Rat(2)}, {Rat(1, 2), Rat(1), Rat(0)}})},
       {"a2", PiecewiseDensity({{Rat(0), Rat(1, 2), Rat(0)}, {Rat(1, 2), Rat(1), Rat(2)}})}},
      true);
}

JispInstance two_jobs_same_slot() {
  JispInstance j;
  j.points = 2;
  j.jobs = {{{0, 1, Rat(3)}}, {{0, 1, Rat(2)}}};
  return j;
}

JispInstance three_jobs_chain() {
  JispInstance j;
  j.points = 3;
  j.jobs = {{{0, 1, Rat(2)}}, {{0, 2, Rat(3)}}, {{1, 2, Rat(2)}}};
  return j;
}

}  // namespace

TEST_CASE("cell bound") {
  // delta = eps/n^2 for rho = 1, cap = delta*eps/(2n).
  CHECK(cut_set_cell_bound(2, Rat(1), Rat(1)) == Rat(1, 16));
  CHECK(cut_set_cell_bound(1, Rat(1), Rat(1)) == Rat(1, 2));
  // 1/rho integral: exact power. rho = 1/2, n = 2, eps = 1: delta = 1/16.
  CHECK(cut_set_cell_bound(2, Rat(1, 2), Rat(1)) == Rat(1, 64));
  // Irrational delta is rounded down: the implied delta never exceeds the
  // true (eps/n^2)^{1/rho}.
  Rat cap = cut_set_cell_bound(2, Rat(2, 3), Rat(1));
  CHECK(cap > 0);
  Rat implied_delta = cap * 4;  // 2n/eps
  BfI truth = BfI::from_rat(Rat(1, 4)).pow(3, 2);
  CHECK(certainly_leq(BfI::from_rat(implied_delta), truth));
  CHECK(cap < cut_set_cell_bound(2, Rat(1), Rat(1)));
}

TEST_CASE("cut set sweep") {
  SUBCASE("two uniform agents, rho 1, eps 1") {
    CutSet cs = build_cut_set(uniform(2), Rat(1), Rat(1));
    REQUIRE(cs.points.size() == 17);
    for (int k = 0; k <= 16; ++k) {
      Rat want(k, 16);
      want.canonicalize();
      CHECK(cs.points[static_cast<std::size_t>(k)] == want);
    }
    CHECK(cs.cell_count() == 16);
  }
  SUBCASE("single uniform agent") {
    CutSet cs = build_cut_set(uniform(1), Rat(1), Rat(1));
    REQUIRE(cs.points.size() == 3);
    CHECK(cs.points[1] == Rat(1, 2));
  }
  SUBCASE("every cell within the cap, random instances") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto inst = random_instance(2 + static_cast<int>(seed % 2), 4, seed * 31);
      for (const Rat& rho : {Rat(1), Rat(1, 2)}) {
        CutSet cs = build_cut_set(inst, rho, Rat(1, 2));
        Rat cap = cut_set_cell_bound(inst.agent_count(), rho, Rat(1, 2));
        for (std::size_t i = 0; i + 1 < cs.points.size(); ++i) {
          Interval cell = Interval::make(cs.points[i], cs.points[i + 1]);
          for (int a = 0; a < inst.agent_count(); ++a)
            CHECK(inst.eval(a, cell) <= cap);
        }
      }
    }
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(build_cut_set(uniform(2), Rat(1), Rat(1), 5), BudgetExceeded);
    try {
      build_cut_set(uniform(2), Rat(1), Rat(1), 5);
    } catch (const BudgetExceeded& e) {
      CHECK(e.required >= 17);
    }
  }
}

TEST_CASE("discretize") {
  CutSet cs = build_cut_set(uniform(2), Rat(1), Rat(1));
  JispInstance j = discretize(uniform(2), cs);
  CHECK(jisp_violations(j).empty());
  REQUIRE(j.jobs.size() == 2);
  CHECK(j.jobs[0].size() == 136);
  CHECK(j.jobs[1].size() == 136);
  bool found = false;
  for (const auto& c : j.jobs[0])
    if (c.l == 0 && c.r == 8) {
      found = true;
      CHECK(c.w == Rat(1, 2));
    }
  CHECK(found);
  // rho = 1: every weight is the exact interval value.
  for (const auto& c : j.jobs[1])
    CHECK(c.w == Interval::make(cs.points[static_cast<std::size_t>(c.l)],
                                cs.points[static_cast<std::size_t>(c.r)]).length());

  // Zero-value spans get weight zero.
  auto ds = disjoint_support();
  CutSet dcs = build_cut_set(ds, Rat(1), Rat(1));
  JispInstance dj = discretize(ds, dcs);
  for (const auto& c : dj.jobs[0])
    if (dcs.points[static_cast<std::size_t>(c.l)] >= Rat(1, 2)) CHECK(c.w == 0);
}

TEST_CASE("local ratio worked examples") {
  SUBCASE("two jobs, one slot") {
    JispSolution s = local_ratio_solve(two_jobs_same_slot());
    CHECK(solution_weight(two_jobs_same_slot(), s) == 3);
    REQUIRE(s.selected[0]);
    CHECK(*s.selected[0] == std::make_pair(0, 1));
    CHECK_FALSE(s.selected[1]);
  }
  SUBCASE("chain of three") {
    auto j = three_jobs_chain();
    JispSolution s = local_ratio_solve(j);
    CHECK(solution_weight(j, s) == 4);
    REQUIRE(s.selected[0]);
    REQUIRE(s.selected[2]);
    CHECK(*s.selected[0] == std::make_pair(0, 1));
    CHECK(*s.selected[2] == std::make_pair(1, 2));
    CHECK_FALSE(s.selected[1]);
    CHECK(solution_violations(j, s).empty());
  }
  SUBCASE("empty instance") {
    JispInstance j;
    j.points = 2;
    JispSolution s = local_ratio_solve(j);
    CHECK(s.selected.empty());
    CHECK(solution_weight(j, s) == 0);
  }
}

TEST_CASE("brute force oracle") {
  CHECK(solution_weight(two_jobs_same_slot(), brute_force_jisp(two_jobs_same_slot())) == 3);
  auto j = three_jobs_chain();
  CHECK(solution_weight(j, brute_force_jisp(j)) == 4);

  JispInstance single;
  single.points = 4;
  single.jobs = {{{1, 3, Rat(5, 2)}}};
  JispSolution s = brute_force_jisp(single);
  REQUIRE(s.selected[0]);
  CHECK(*s.selected[0] == std::make_pair(1, 3));

  JispInstance big;
  big.points = 40;
  big.jobs.resize(1);
  for (int l = 0; l < 30; ++l) big.jobs[0].push_back({l, l + 1, Rat(l + 1)});
  CHECK_THROWS_AS(brute_force_jisp(big), BudgetExceeded);
}

TEST_CASE("two approximation on random instances") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    int jobs = 1 + static_cast<int>(seed % 4);
    JispInstance j = random_jisp(jobs, 6, 12, seed * 7919);
    REQUIRE(jisp_violations(j).empty());
    JispSolution greedy = local_ratio_solve(j);
    CHECK(solution_violations(j, greedy).empty());
    JispSolution best = brute_force_jisp(j);
    CHECK(solution_violations(j, best).empty());
    Rat wg = solution_weight(j, greedy);
    Rat wb = solution_weight(j, best);
    CHECK(wg * 2 >= wb);
    CHECK(wg <= wb);
  }
}

TEST_CASE("jisp json round trip") {
  auto j = three_jobs_chain();
  std::string text = jisp_to_json(j);
  JispInstance back = jisp_from_json(text);
  CHECK(back.points == 3);
  REQUIRE(back.jobs.size() == 3);
  CHECK(back.jobs[1][0].l == 0);
  CHECK(back.jobs[1][0].r == 2);
  CHECK(back.jobs[1][0].w == Rat(3));
  CHECK_THROWS_AS(jisp_from_json("{}"), ParseError);
  CHECK_THROWS_AS(jisp_from_json(R"({"points":2,"jobs":[[{"l":1,"r":1,"w":"1"}]]})"),
                  ParseError);
}

TEST_CASE("solution to partial") {
  CutSet cs = build_cut_set(uniform(2), Rat(1), Rat(1));
  JispSolution s;
  s.selected = {std::make_pair(0, 8), std::nullopt};
  PartialAllocation p = solution_to_partial(uniform(2), cs, s);
  CHECK(p.assigned[0] == Interval::make(Rat(0), Rat(1, 2)));
  CHECK(p.assigned[1].is_empty());

  // Welfare equality for rho = 1: sum of mapped values equals the weight.
  JispInstance j = discretize(uniform(2), cs);
  JispSolution full;
  full.selected = {std::make_pair(0, 8), std::make_pair(8, 16)};
  PartialAllocation q = solution_to_partial(uniform(2), cs, full);
  Rat total(0);
  for (int a = 0; a < 2; ++a)
    total += uniform(2).eval(a, q.assigned[static_cast<std::size_t>(a)]);
  CHECK(total == solution_weight(j, full));

  JispSolution none;
  none.selected = {std::nullopt, std::nullopt};
  PartialAllocation e = solution_to_partial(uniform(2), cs, none);
  CHECK(e.assigned[0].is_empty());
  CHECK(e.assigned[1].is_empty());
}

TEST_CASE("rho mean pipeline") {
  SUBCASE("disjoint support, rho 1") {
    auto ds = disjoint_support();
    RhoPipelineResult r = maximize_rho_mean(ds, Rat(1), Rat(1, 2));
    CHECK(r.allocation.violations().empty());
    // Grid optimum M_1 = 1; guaranteed factor 1/(2 + 4*eps*e/n) = 1/(2+e).
    BfI lhs = BfI::from_rat(r.report.sw_value);
    BfI rhs = BfI::from_ul(1) / (BfI::from_ul(2) + BfI::euler_e());
    CHECK(certainly_geq(lhs, rhs));
  }
  SUBCASE("two uniform, rho 1/2") {
    RhoPipelineResult r = maximize_rho_mean(uniform(2), Rat(1, 2), Rat(1, 2));
    CHECK(r.allocation.violations().empty());
    REQUIRE(r.report.rho_means.size() == 1);
    CHECK(r.report.rho_means[0].rho == Rat(1, 2));
    // Each mapped value matches the cell span it was scheduled from.
    for (int a = 0; a < 2; ++a) {
      const auto& sel = r.solution.selected[static_cast<std::size_t>(a)];
      if (!sel) continue;
      Interval iv = Interval::make(r.cuts.points[static_cast<std::size_t>(sel->first)],
                                   r.cuts.points[static_cast<std::size_t>(sel->second)]);
      CHECK(uniform(2).eval(a, r.partial.assigned[static_cast<std::size_t>(a)]) ==
            uniform(2).eval(a, iv));
    }
  }
  SUBCASE("preconditions and budget") {
    CHECK_THROWS_AS(maximize_rho_mean(uniform(2), Rat(1), Rat(1)), CakeError);
    CHECK_THROWS_AS(maximize_rho_mean(uniform(2), Rat(2), Rat(1, 2)), CakeError);
    CHECK_THROWS_AS(maximize_rho_mean(uniform(2), Rat(1), Rat(1, 2), 3), BudgetExceeded);
  }
}
