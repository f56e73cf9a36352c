#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/model.hpp"

namespace cakecut {

struct Literal {
  int var;  // 1-based
  bool positive;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  int num_vars{0};
  std::vector<Clause> clauses;
};

CnfFormula cnf_from_dimacs(const std::string& text);

/// Gadget-form requirements: 1-3 literals per clause, at most 5 occurrences
/// per variable, every variable occurring both positively and negatively.
std::vector<std::string> cnf_violations(const CnfFormula& cnf);

/// Appends tautology clauses (x OR not-x) for variables missing a polarity.
/// Preserves satisfiability. This preprocessing is a convenience for
/// arbitrary CNF inputs, not part of the reduction itself.
CnfFormula pad_to_gadget_form(const CnfFormula& cnf);

bool assignment_satisfies(const CnfFormula& cnf, const std::vector<bool>& f);

/// Coordinates of the gadget on the unit cake. The raw segment is
/// [0, 14r+1] (with auxiliary block) or [0, 14r] (without); per variable i
/// the block H_i = [14(i-1), 14i] splits into 14 unit cells.
struct GadgetLayout {
  int r{0};
  int m{0};
  bool has_aux{false};
  Rat raw_length{1};

  int agent_count() const { return 3 * r + m + (has_aux ? 1 : 0); }

  // Agent order: s_1..s_r, sp_1..sp_r, z_1..z_r, a_1..a_m, then d.
  int s_index(int i) const { return i - 1; }
  int sp_index(int i) const { return r + i - 1; }
  int z_index(int i) const { return 2 * r + i - 1; }
  int a_index(int j) const { return 3 * r + j - 1; }
  int d_index() const { return 3 * r + m; }

  /// Cell e^i_k, i in [r], k in [14], in unit-cake coordinates.
  Interval cell(int i, int k) const;
  /// The auxiliary block G.
  Interval aux() const;
  /// Union of cells k..k2 of block i.
  Interval cells(int i, int k, int k2) const;
};

std::string layout_to_json(const GadgetLayout& layout, const CakeInstance& inst);

/// Per-clause satisfiability gadget: separators s_i/s'_i own unit cells 7
/// and 14 of their block, base agent z_i spreads 1/4 over cells 1, 6, 8, 13,
/// clause agents place 1/3 on one cell per literal occurrence plus the
/// remainder on the auxiliary block, and agent d wants only the auxiliary
/// block. Normalized on the unit cake.
std::pair<CakeInstance, GadgetLayout> build_nsw_instance(const CnfFormula& cnf);

/// Variant without the auxiliary block: cell values raised to the power
/// 1/rho (1/rho must be a positive integer), instance left unnormalized.
std::pair<CakeInstance, GadgetLayout> build_rho_instance(const CnfFormula& cnf,
                                                         const Rat& rho);

/// Allocation induced by a satisfying assignment: each separator takes its
/// cell, z_i takes cells 1-6 when f(x_i) is false and cells 8-13 otherwise,
/// each clause agent takes the cell of its lowest-index satisfied literal,
/// d takes the auxiliary block; gaps are merged in.
Allocation yes_case_allocation(const CakeInstance& inst, const GadgetLayout& layout,
                               const CnfFormula& cnf, const std::vector<bool>& f);

/// n-th power of the yes-case NSW lower bound: 2^-r * 3^-m with n = 3r+m+1.
Rat nsw_yes_bound_power(int r, int m);

}  // namespace cakecut
