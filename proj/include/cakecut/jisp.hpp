#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/model.hpp"
#include "cakecut/welfare.hpp"

namespace cakecut {

/// Cut points 0 = x_0 < ... < x_{k+1} = 1; consecutive cells are cheap for
/// every agent (at most delta*eps/(2n) each).
struct CutSet {
  std::vector<Rat> points;

  int cell_count() const { return static_cast<int>(points.size()) - 1; }
};

/// Per-cell value cap delta*eps/(2n) with delta = (eps/n^2)^(1/rho); delta is
/// exact when 1/rho is an integer and otherwise a rational rounded down
/// within relative 2^-64 (a smaller delta only refines the grid and lowers
/// the cap, so all downstream bounds still hold).
Rat cut_set_cell_bound(int n, const Rat& rho, const Rat& eps);

CutSet build_cut_set(const CakeInstance& inst, const Rat& rho, const Rat& eps,
                     std::size_t point_budget = 20000);

/// Candidate interval [l, r) in cut-point indices.
struct JispCandidate {
  int l;
  int r;
  Rat w;
};

/// Explicit weighted job-interval-selection instance over point indices
/// 0..points-1. Weights are exact rationals.
struct JispInstance {
  int points{0};
  std::vector<std::vector<JispCandidate>> jobs;
};

std::vector<std::string> jisp_violations(const JispInstance& jisp);

// JSON form: {"points": k, "jobs": [[{"l": 0, "r": 2, "w": "3"}, ...], ...]}
JispInstance jisp_from_json(const std::string& text);
std::string jisp_to_json(const JispInstance& jisp);

/// At most one index pair per job; selected intervals pairwise disjoint.
struct JispSolution {
  std::vector<std::optional<std::pair<int, int>>> selected;
};

Rat solution_weight(const JispInstance& jisp, const JispSolution& sol);
std::vector<std::string> solution_violations(const JispInstance& jisp,
                                             const JispSolution& sol);

/// Local-ratio schedule: sweep candidates by ascending right endpoint,
/// selecting the residual-max candidate at each endpoint and unwinding in
/// reverse. Guarantees weight >= optimum/2.
JispSolution local_ratio_solve(const JispInstance& jisp);

/// Exact optimum by exhaustive search; refuses instances with more than
/// `cap` candidates after dominance pruning.
JispSolution brute_force_jisp(const JispInstance& jisp, std::size_t cap = 24);

/// The jobs-as-agents instance of the discretization: one job per agent,
/// every index pair a candidate, weight = value of the spanned cells.
/// Exact weights require rho = 1; use maximize_rho_mean for other rho.
JispInstance discretize(const CakeInstance& inst, const CutSet& cuts);

PartialAllocation solution_to_partial(const CakeInstance& inst, const CutSet& cuts,
                                      const JispSolution& sol);

struct RhoPipelineResult {
  CutSet cuts;
  JispSolution solution;
  PartialAllocation partial;
  Allocation allocation;
  WelfareReport report;
};

/// Discretize, solve the induced JISP (exact weights for rho = 1, double
/// weights otherwise; the final welfare claim is re-certified downstream
/// against the grid oracle), map back, extend to a full allocation.
RhoPipelineResult maximize_rho_mean(const CakeInstance& inst, const Rat& rho,
                                    const Rat& eps, std::size_t point_budget = 20000);

}  // namespace cakecut
