#include "cakecut/hardness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cakecut {

CnfFormula cnf_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula cnf;
  bool header_seen = false;
  Clause current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      int declared_clauses;
      if (!(ls >> p >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
        throw ParseError("bad DIMACS header: " + line);
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before DIMACS 'p cnf' header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (!current.empty()) cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        int var = lit > 0 ? lit : -lit;
        if (var > cnf.num_vars)
          throw ParseError("literal out of range: " + std::to_string(lit));
        current.push_back({var, lit > 0});
      }
    }
    if (!ls.eof()) throw ParseError("bad DIMACS token in line: " + line);
  }
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (!header_seen) throw ParseError("missing DIMACS 'p cnf' header");
  return cnf;
}

std::vector<std::string> cnf_violations(const CnfFormula& cnf) {
  std::vector<std::string> out;
  if (cnf.num_vars < 1) out.push_back("formula needs at least one variable");
  if (cnf.clauses.empty()) out.push_back("formula needs at least one clause");
  std::vector<int> pos(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  std::vector<int> neg(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    const auto& cl = cnf.clauses[j];
    if (cl.empty() || cl.size() > 3)
      out.push_back("clause " + std::to_string(j + 1) + ": needs 1-3 literals");
    for (const auto& lit : cl) {
      if (lit.var < 1 || lit.var > cnf.num_vars) {
        out.push_back("clause " + std::to_string(j + 1) + ": variable out of range");
        continue;
      }
      (lit.positive ? pos : neg)[static_cast<std::size_t>(lit.var)]++;
    }
  }
  for (int v = 1; v <= cnf.num_vars; ++v) {
    std::size_t vu = static_cast<std::size_t>(v);
    if (pos[vu] + neg[vu] > 5)
      out.push_back("variable " + std::to_string(v) + ": more than 5 occurrences");
    if (pos[vu] == 0)
      out.push_back("variable " + std::to_string(v) + ": never occurs positively");
    if (neg[vu] == 0)
      out.push_back("variable " + std::to_string(v) + ": never occurs negatively");
  }
  return out;
}

CnfFormula pad_to_gadget_form(const CnfFormula& cnf) {
  CnfFormula out = cnf;
  std::vector<int> pos(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  std::vector<int> neg(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  for (const auto& cl : cnf.clauses)
    for (const auto& lit : cl) (lit.positive ? pos : neg)[static_cast<std::size_t>(lit.var)]++;
  for (int v = 1; v <= cnf.num_vars; ++v) {
    std::size_t vu = static_cast<std::size_t>(v);
    if (pos[vu] == 0 || neg[vu] == 0)
      out.clauses.push_back({{v, true}, {v, false}});
  }
  return out;
}

bool assignment_satisfies(const CnfFormula& cnf, const std::vector<bool>& f) {
  if (f.size() != static_cast<std::size_t>(cnf.num_vars)) return false;
  for (const auto& cl : cnf.clauses) {
    bool sat = false;
    for (const auto& lit : cl)
      if (f[static_cast<std::size_t>(lit.var) - 1] == lit.positive) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

Interval GadgetLayout::cell(int i, int k) const {
  Rat left = Rat(14 * (i - 1) + k - 1) / raw_length;
  Rat right = Rat(14 * (i - 1) + k) / raw_length;
  return Interval::make(left, right);
}

Interval GadgetLayout::cells(int i, int k, int k2) const {
  Rat left = Rat(14 * (i - 1) + k - 1) / raw_length;
  Rat right = Rat(14 * (i - 1) + k2) / raw_length;
  return Interval::make(left, right);
}

Interval GadgetLayout::aux() const {
  if (!has_aux) throw CakeError("layout has no auxiliary block");
  return Interval::make(Rat(14 * r) / raw_length, Rat(1));
}

namespace {

// (block, cell) per clause per literal; occurrence index q counted in
// clause order, q-th positive occurrence at cell 1+q, q-th negative at 8+q.
std::vector<std::vector<std::pair<int, int>>> literal_cells(const CnfFormula& cnf) {
  std::vector<int> pos(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  std::vector<int> neg(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& cl : cnf.clauses) {
    std::vector<std::pair<int, int>> cells;
    for (const auto& lit : cl) {
      std::size_t vu = static_cast<std::size_t>(lit.var);
      int k = lit.positive ? 1 + ++pos[vu] : 8 + ++neg[vu];
      cells.emplace_back(lit.var, k);
    }
    out.push_back(std::move(cells));
  }
  return out;
}

// Raw unit cell [c, c+1] on [0, L] valued `v` means raw density v there.
struct CellValue {
  int raw_start;  // integer cell start
  Rat value;
};

PiecewiseDensity density_from_cells(std::vector<CellValue> cells, int raw_len) {
  std::sort(cells.begin(), cells.end(),
            [](const CellValue& a, const CellValue& b) { return a.raw_start < b.raw_start; });
  std::vector<DensityPiece> pieces;
  int pos = 0;
  for (const auto& c : cells) {
    if (c.raw_start > pos) pieces.push_back({Rat(pos), Rat(c.raw_start), Rat(0)});
    pieces.push_back({Rat(c.raw_start), Rat(c.raw_start + 1), c.value});
    pos = c.raw_start + 1;
  }
  if (pos < raw_len) pieces.push_back({Rat(pos), Rat(raw_len), Rat(0)});
  return PiecewiseDensity(std::move(pieces));
}

int raw_cell_start(int i, int k) { return 14 * (i - 1) + k - 1; }

std::pair<CakeInstance, GadgetLayout> build_gadget(const CnfFormula& cnf, const Rat& rho,
                                                   bool with_aux) {
  auto problems = cnf_violations(cnf);
  if (!problems.empty()) throw CakeError("formula not in gadget form: " + problems.front());
  if (rho.get_num() != 1 || rho.get_den() < 1)
    throw CakeError("1/rho must be a positive integer");
  unsigned long inv_rho = rho.get_den().get_ui();

  GadgetLayout layout;
  layout.r = cnf.num_vars;
  layout.m = static_cast<int>(cnf.clauses.size());
  layout.has_aux = with_aux;
  int raw_len = 14 * layout.r + (with_aux ? 1 : 0);
  layout.raw_length = raw_len;
  int aux_start = 14 * layout.r;

  auto cell_value = [&](const Rat& base) { return rat_pow(base, inv_rho); };

  std::vector<Agent> agents(static_cast<std::size_t>(layout.agent_count()));
  for (int i = 1; i <= layout.r; ++i) {
    agents[static_cast<std::size_t>(layout.s_index(i))] = {
        "s" + std::to_string(i),
        density_from_cells({{raw_cell_start(i, 7), cell_value(Rat(1))}}, raw_len)};
    agents[static_cast<std::size_t>(layout.sp_index(i))] = {
        "sp" + std::to_string(i),
        density_from_cells({{raw_cell_start(i, 14), cell_value(Rat(1))}}, raw_len)};
    Rat zv = cell_value(Rat(1, 4));
    agents[static_cast<std::size_t>(layout.z_index(i))] = {
        "z" + std::to_string(i),
        density_from_cells({{raw_cell_start(i, 1), zv},
                            {raw_cell_start(i, 6), zv},
                            {raw_cell_start(i, 8), zv},
                            {raw_cell_start(i, 13), zv}},
                           raw_len)};
  }
  auto cells = literal_cells(cnf);
  for (int j = 1; j <= layout.m; ++j) {
    const auto& cl = cnf.clauses[static_cast<std::size_t>(j - 1)];
    std::vector<CellValue> cv;
    Rat lit_value = cell_value(Rat(1, 3));
    for (const auto& [var, k] : cells[static_cast<std::size_t>(j - 1)])
      cv.push_back({raw_cell_start(var, k), lit_value});
    if (with_aux) {
      Rat aux_value = 1 - Rat(static_cast<int>(cl.size())) / 3;
      if (aux_value > 0) cv.push_back({aux_start, aux_value});
    }
    agents[static_cast<std::size_t>(layout.a_index(j))] = {
        "a" + std::to_string(j), density_from_cells(std::move(cv), raw_len)};
  }
  if (with_aux)
    agents[static_cast<std::size_t>(layout.d_index())] = {
        "d", density_from_cells({{aux_start, Rat(1)}}, raw_len)};

  CakeInstance inst = rescale_to_unit(agents, Rat(raw_len), with_aux);
  return {std::move(inst), layout};
}

}  // namespace

std::pair<CakeInstance, GadgetLayout> build_nsw_instance(const CnfFormula& cnf) {
  return build_gadget(cnf, Rat(1), true);
}

std::pair<CakeInstance, GadgetLayout> build_rho_instance(const CnfFormula& cnf,
                                                         const Rat& rho) {
  return build_gadget(cnf, rho, false);
}

Allocation yes_case_allocation(const CakeInstance& inst, const GadgetLayout& layout,
                               const CnfFormula& cnf, const std::vector<bool>& f) {
  if (!assignment_satisfies(cnf, f))
    throw CakeError("assignment does not satisfy the formula");
  PartialAllocation partial = PartialAllocation::empty(layout.agent_count());
  auto assign = [&](int agent, const Interval& iv) {
    auto& slot = partial.assigned[static_cast<std::size_t>(agent)];
    if (!slot.is_empty()) throw CakeError("yes-case cell assigned twice");
    slot = iv;
  };
  for (int i = 1; i <= layout.r; ++i) {
    assign(layout.s_index(i), layout.cell(i, 7));
    assign(layout.sp_index(i), layout.cell(i, 14));
    bool truthy = f[static_cast<std::size_t>(i) - 1];
    assign(layout.z_index(i), truthy ? layout.cells(i, 8, 13) : layout.cells(i, 1, 6));
  }
  auto cells = literal_cells(cnf);
  for (int j = 1; j <= layout.m; ++j) {
    const auto& cl = cnf.clauses[static_cast<std::size_t>(j - 1)];
    int chosen = -1;
    for (std::size_t t = 0; t < cl.size(); ++t)
      if (f[static_cast<std::size_t>(cl[t].var) - 1] == cl[t].positive) {
        chosen = static_cast<int>(t);
        break;
      }
    auto [var, k] = cells[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(chosen)];
    assign(layout.a_index(j), layout.cell(var, k));
  }
  if (layout.has_aux) assign(layout.d_index(), layout.aux());
  auto problems = partial.violations();
  if (!problems.empty()) throw CakeError("yes-case partial invalid: " + problems.front());
  (void)inst;
  return complete_allocation(partial);
}

Rat nsw_yes_bound_power(int r, int m) {
  if (r < 1 || m < 1) throw CakeError("need r, m >= 1");
  return Rat(1) / (rat_pow(Rat(2), static_cast<unsigned long>(r)) *
                   rat_pow(Rat(3), static_cast<unsigned long>(m)));
}

std::string layout_to_json(const GadgetLayout& layout, const CakeInstance& inst) {
  nlohmann::json j;
  j["raw_length"] = rat_to_string(layout.raw_length);
  j["agents"] = nlohmann::json::object();
  for (int i = 1; i <= layout.r; ++i) {
    j["agents"][inst.agent(layout.s_index(i)).name] = "separator";
    j["agents"][inst.agent(layout.sp_index(i)).name] = "separator_prime";
    j["agents"][inst.agent(layout.z_index(i)).name] = "base";
  }
  for (int jj = 1; jj <= layout.m; ++jj)
    j["agents"][inst.agent(layout.a_index(jj)).name] = "clause";
  if (layout.has_aux) j["agents"][inst.agent(layout.d_index()).name] = "auxiliary";
  j["cells"] = nlohmann::json::object();
  for (int i = 1; i <= layout.r; ++i)
    for (int k = 1; k <= 14; ++k) {
      Interval c = layout.cell(i, k);
      j["cells"]["e" + std::to_string(i) + "_" + std::to_string(k)] = {
          {"left", rat_to_string(c.left)}, {"right", rat_to_string(c.right)}};
    }
  if (layout.has_aux) {
    Interval g = layout.aux();
    j["aux"] = {{"left", rat_to_string(g.left)}, {"right", rat_to_string(g.right)}};
  }
  return j.dump(2) + "\n";
}

}  // namespace cakecut
